#include "twarrow/fincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace twarrow::fincat {

namespace {

std::string mor_str(const FinCategory& c, MorId m) {
  std::ostringstream os;
  os << "#" << m << " (" << c.src(m) << "->" << c.tgt(m) << ")";
  return os.str();
}

void check_parts(std::uint32_t object_count, const std::vector<ObjId>& mor_src,
                 const std::vector<ObjId>& mor_tgt, const std::vector<MorId>* identities) {
  if (mor_src.size() != mor_tgt.size())
    throw ValidationError("category: src/tgt arrays differ in length");
  for (std::size_t m = 0; m < mor_src.size(); ++m)
    if (mor_src[m] >= object_count || mor_tgt[m] >= object_count)
      throw ValidationError("category: morphism " + std::to_string(m) + " has endpoint outside object range");
  if (identities) {
    if (identities->size() != object_count)
      throw ValidationError("category: identity table size != object count");
    for (ObjId x = 0; x < object_count; ++x) {
      MorId e = (*identities)[x];
      if (e >= mor_src.size() || mor_src[e] != x || mor_tgt[e] != x)
        throw ValidationError("category: identity of object " + std::to_string(x) + " is not an endomorphism of it");
    }
  }
}

}  // namespace

void FinCategory::build_hom_index() {
  const std::uint64_t cells = static_cast<std::uint64_t>(object_count_) * object_count_;
  if (cells > (1ull << 24))
    throw ValidationError("category: too many objects for a hom index (" + std::to_string(object_count_) + ")");
  hom_order_.resize(mor_src_.size());
  for (MorId m = 0; m < mor_src_.size(); ++m) hom_order_[m] = m;
  std::sort(hom_order_.begin(), hom_order_.end(), [&](MorId a, MorId b) {
    if (mor_src_[a] != mor_src_[b]) return mor_src_[a] < mor_src_[b];
    if (mor_tgt_[a] != mor_tgt_[b]) return mor_tgt_[a] < mor_tgt_[b];
    return a < b;
  });
  hom_offsets_.assign(cells + 1, 0);
  for (MorId m = 0; m < mor_src_.size(); ++m) {
    std::uint64_t key = static_cast<std::uint64_t>(mor_src_[m]) * object_count_ + mor_tgt_[m];
    ++hom_offsets_[key + 1];
  }
  for (std::size_t i = 1; i < hom_offsets_.size(); ++i) hom_offsets_[i] += hom_offsets_[i - 1];
}

std::span<const MorId> FinCategory::hom(ObjId x, ObjId y) const {
  std::uint64_t key = static_cast<std::uint64_t>(x) * object_count_ + y;
  std::uint32_t lo = hom_offsets_[key], hi = hom_offsets_[key + 1];
  return std::span<const MorId>(hom_order_.data() + lo, hi - lo);
}

FinCategory FinCategory::dense(std::uint32_t object_count, std::vector<ObjId> mor_src,
                               std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                               const std::function<MorId(MorId, MorId)>& composite) {
  check_parts(object_count, mor_src, mor_tgt, &identities);
  const std::size_t m = mor_src.size();
  if (m > kDenseMorLimit)
    throw ValidationError("category: " + std::to_string(m) + " morphisms exceed the dense-table limit");
  FinCategory c;
  c.object_count_ = object_count;
  c.mor_src_ = std::move(mor_src);
  c.mor_tgt_ = std::move(mor_tgt);
  c.identities_ = std::move(identities);
  c.storage_ = Storage::kDense;
  c.comp_table_.assign(m * m, kNotComposable);
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (c.mor_tgt_[f] == c.mor_src_[g]) {
        MorId gf = composite(g, f);
        if (gf >= m || c.mor_src_[gf] != c.mor_src_[f] || c.mor_tgt_[gf] != c.mor_tgt_[g])
          throw ValidationError("category: composite of " + std::to_string(g) + " after " + std::to_string(f) + " has wrong endpoints");
        c.comp_table_[static_cast<std::size_t>(g) * m + f] = gf;
      }
  c.build_hom_index();
  return c;
}

FinCategory FinCategory::from_triples(std::uint32_t object_count, std::vector<ObjId> mor_src,
                                      std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                                      const std::vector<std::array<MorId, 3>>& triples) {
  check_parts(object_count, mor_src, mor_tgt, &identities);
  const std::size_t m = mor_src.size();
  if (m > kDenseMorLimit)
    throw ValidationError("category: " + std::to_string(m) + " morphisms exceed the dense-table limit");
  std::vector<MorId> table(m * m, kNotComposable);
  auto set = [&](MorId g, MorId f, MorId gf, const char* what) {
    if (f >= m || g >= m || gf >= m) throw ValidationError(std::string("category: ") + what + ": morphism id out of range");
    if (mor_tgt[f] != mor_src[g]) throw ValidationError(std::string("category: ") + what + ": pair not composable");
    if (mor_src[gf] != mor_src[f] || mor_tgt[gf] != mor_tgt[g])
      throw ValidationError(std::string("category: ") + what + ": composite has wrong endpoints");
    MorId& slot = table[static_cast<std::size_t>(g) * m + f];
    if (slot != kNotComposable && slot != gf)
      throw ValidationError(std::string("category: ") + what + ": conflicting composite assignments");
    slot = gf;
  };
  for (MorId f = 0; f < m; ++f) {
    set(identities[mor_tgt[f]], f, f, "identity law");
    set(f, identities[mor_src[f]], f, "identity law");
  }
  for (const auto& t : triples) set(t[0], t[1], t[2], "composition triple");
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (mor_tgt[f] == mor_src[g] && table[static_cast<std::size_t>(g) * m + f] == kNotComposable)
        throw ValidationError("category: missing composite for pair (" + std::to_string(g) + ", " + std::to_string(f) + ")");
  FinCategory c;
  c.object_count_ = object_count;
  c.mor_src_ = std::move(mor_src);
  c.mor_tgt_ = std::move(mor_tgt);
  c.identities_ = std::move(identities);
  c.storage_ = Storage::kDense;
  c.comp_table_ = std::move(table);
  c.build_hom_index();
  return c;
}

FinCategory FinCategory::thin(std::uint32_t object_count, std::vector<ObjId> mor_src,
                              std::vector<ObjId> mor_tgt) {
  check_parts(object_count, mor_src, mor_tgt, nullptr);
  FinCategory c;
  c.object_count_ = object_count;
  c.mor_src_ = std::move(mor_src);
  c.mor_tgt_ = std::move(mor_tgt);
  c.storage_ = Storage::kThin;
  c.build_hom_index();
  if (!c.is_thin()) throw ValidationError("category: thin storage requested but a hom-set has two elements");
  c.identities_.resize(object_count);
  for (ObjId x = 0; x < object_count; ++x) {
    auto h = c.hom(x, x);
    if (h.size() != 1)
      throw ValidationError("category: thin storage needs exactly one endomorphism of object " + std::to_string(x));
    c.identities_[x] = h[0];
  }
  return c;
}

FinCategory FinCategory::automatic(std::uint32_t object_count, std::vector<ObjId> mor_src,
                                   std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                                   const std::function<MorId(MorId, MorId)>& composite) {
  if (mor_src.size() <= kDenseMorLimit)
    return dense(object_count, std::move(mor_src), std::move(mor_tgt), std::move(identities), composite);
  return thin(object_count, std::move(mor_src), std::move(mor_tgt));
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (!is_composable(g, f))
    throw DimensionError("compose: " + mor_str(*this, g) + " after " + mor_str(*this, f) + " is not composable");
  if (storage_ == Storage::kDense)
    return comp_table_[static_cast<std::size_t>(g) * mor_src_.size() + f];
  auto h = hom(mor_src_[f], mor_tgt_[g]);
  if (h.size() != 1)
    throw ValidationError("compose: thin category has no unique composite for (" + std::to_string(g) + ", " + std::to_string(f) + ")");
  return h[0];
}

bool FinCategory::is_thin() const {
  for (std::size_t i = 1; i < hom_offsets_.size(); ++i)
    if (hom_offsets_[i] - hom_offsets_[i - 1] > 1) return false;
  return true;
}

std::optional<MorId> FinCategory::try_inverse(MorId m) const {
  for (MorId w : hom(mor_tgt_[m], mor_src_[m]))
    if (compose(w, m) == identities_[mor_src_[m]] && compose(m, w) == identities_[mor_tgt_[m]]) return w;
  return std::nullopt;
}

std::optional<std::string> FinCategory::validate() const {
  const std::size_t m = mor_src_.size();
  if (identities_.size() != object_count_) return "identity table size != object count";
  for (ObjId x = 0; x < object_count_; ++x) {
    MorId e = identities_[x];
    if (e >= m || mor_src_[e] != x || mor_tgt_[e] != x)
      return "identity of object " + std::to_string(x) + " is not an endomorphism of it";
  }
  if (storage_ == Storage::kDense) {
    if (comp_table_.size() != m * m) return "dense table has wrong size";
    for (MorId g = 0; g < m; ++g)
      for (MorId f = 0; f < m; ++f) {
        MorId gf = comp_table_[static_cast<std::size_t>(g) * m + f];
        if (is_composable(g, f)) {
          if (gf == kNotComposable) return "missing composite for composable pair (" + std::to_string(g) + ", " + std::to_string(f) + ")";
          if (mor_src_[gf] != mor_src_[f] || mor_tgt_[gf] != mor_tgt_[g])
            return "composite of (" + std::to_string(g) + ", " + std::to_string(f) + ") has wrong endpoints";
        } else if (gf != kNotComposable) {
          return "composite recorded for non-composable pair (" + std::to_string(g) + ", " + std::to_string(f) + ")";
        }
      }
    for (MorId f = 0; f < m; ++f) {
      if (compose(identities_[mor_tgt_[f]], f) != f) return "left identity law fails for " + mor_str(*this, f);
      if (compose(f, identities_[mor_src_[f]]) != f) return "right identity law fails for " + mor_str(*this, f);
    }
    // associativity, walking composable pairs through the hom index
    for (MorId f = 0; f < m; ++f)
      for (ObjId z = 0; z < object_count_; ++z)
        for (MorId g : hom(mor_tgt_[f], z)) {
          MorId gf = compose(g, f);
          for (ObjId w = 0; w < object_count_; ++w)
            for (MorId h : hom(z, w))
              if (compose(h, gf) != compose(compose(h, g), f))
                return "associativity fails on (" + std::to_string(h) + ", " + std::to_string(g) + ", " + std::to_string(f) + ")";
        }
  } else {
    if (!is_thin()) return "thin storage but a hom-set has two elements";
    for (ObjId x = 0; x < object_count_; ++x) {
      auto h = hom(x, x);
      if (h.size() != 1 || h[0] != identities_[x])
        return "thin category: endomorphisms of object " + std::to_string(x) + " are not exactly its identity";
    }
    // closure under composition via bitset reachability rows
    const std::size_t words = (object_count_ + 63) / 64;
    std::vector<std::uint64_t> row(static_cast<std::size_t>(object_count_) * words, 0);
    auto bit = [&](ObjId x, ObjId y) -> std::uint64_t& { return row[static_cast<std::size_t>(x) * words + y / 64]; };
    for (MorId f = 0; f < m; ++f) bit(mor_src_[f], mor_tgt_[f]) |= 1ull << (mor_tgt_[f] % 64);
    for (ObjId x = 0; x < object_count_; ++x)
      for (ObjId y = 0; y < object_count_; ++y) {
        if (!(row[static_cast<std::size_t>(x) * words + y / 64] >> (y % 64) & 1)) continue;
        for (std::size_t w = 0; w < words; ++w)
          if (row[static_cast<std::size_t>(y) * words + w] & ~row[static_cast<std::size_t>(x) * words + w])
            return "thin category: morphisms " + std::to_string(x) + "->" + std::to_string(y) + "->... with no composite";
      }
  }
  return std::nullopt;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (object_count_ != other.object_count_ || mor_src_ != other.mor_src_ ||
      mor_tgt_ != other.mor_tgt_ || identities_ != other.identities_)
    return false;
  // composition must agree regardless of storage mode
  if (morphism_count() != other.morphism_count()) return false;
  for (MorId g = 0; g < morphism_count(); ++g)
    for (MorId f = 0; f < morphism_count(); ++f)
      if (is_composable(g, f) && compose(g, f) != other.compose(g, f)) return false;
  return true;
}

FinGroupoid FinGroupoid::from_category(FinCategory cat) {
  FinGroupoid g;
  static_cast<FinCategory&>(g) = std::move(cat);
  g.inverse_.resize(g.morphism_count());
  for (MorId m = 0; m < g.morphism_count(); ++m) {
    auto inv = g.try_inverse(m);
    if (!inv) throw ValidationError("groupoid: morphism " + mor_str(g, m) + " has no inverse");
    g.inverse_[m] = *inv;
  }
  return g;
}

std::optional<std::string> FinGroupoid::validate_groupoid() const {
  if (auto w = validate()) return w;
  if (inverse_.size() != morphism_count()) return "inverse table has wrong size";
  for (MorId m = 0; m < morphism_count(); ++m) {
    MorId w = inverse_[m];
    if (src(w) != tgt(m) || tgt(w) != src(m)) return "inverse of " + std::to_string(m) + " has wrong endpoints";
    if (compose(w, m) != identity(src(m)) || compose(m, w) != identity(tgt(m)))
      return "inverse law fails for " + std::to_string(m);
  }
  return std::nullopt;
}

FinFunctor identity_functor(const FinCategory& c) {
  FinFunctor f;
  f.object_map.resize(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) f.object_map[x] = x;
  f.mor_map.resize(c.morphism_count());
  for (MorId m = 0; m < c.morphism_count(); ++m) f.mor_map[m] = m;
  return f;
}

FinFunctor compose_functors(const FinFunctor& f, const FinFunctor& g) {
  FinFunctor h;
  h.object_map.resize(g.object_map.size());
  for (std::size_t x = 0; x < g.object_map.size(); ++x) h.object_map[x] = f.object_map[g.object_map[x]];
  h.mor_map.resize(g.mor_map.size());
  for (std::size_t m = 0; m < g.mor_map.size(); ++m) h.mor_map[m] = f.mor_map[g.mor_map[m]];
  return h;
}

std::optional<std::string> validate_functor(const FinCategory& source, const FinCategory& target,
                                            const FinFunctor& f, bool check_composition) {
  if (f.object_map.size() != source.object_count()) return "object map has wrong size";
  if (f.mor_map.size() != source.morphism_count()) return "morphism map has wrong size";
  for (ObjId x = 0; x < source.object_count(); ++x)
    if (f.object_map[x] >= target.object_count()) return "object map value out of range";
  for (MorId m = 0; m < source.morphism_count(); ++m) {
    MorId fm = f.mor_map[m];
    if (fm >= target.morphism_count()) return "morphism map value out of range";
    if (target.src(fm) != f.object_map[source.src(m)] || target.tgt(fm) != f.object_map[source.tgt(m)])
      return "functor breaks endpoints on morphism " + std::to_string(m);
  }
  for (ObjId x = 0; x < source.object_count(); ++x)
    if (f.mor_map[source.identity(x)] != target.identity(f.object_map[x]))
      return "functor breaks the identity of object " + std::to_string(x);
  if (check_composition) {
    for (MorId f1 = 0; f1 < source.morphism_count(); ++f1)
      for (ObjId z = 0; z < source.object_count(); ++z)
        for (MorId g : source.hom(source.tgt(f1), z))
          if (f.mor_map[source.compose(g, f1)] != target.compose(f.mor_map[g], f.mor_map[f1]))
            return "functor breaks composition on (" + std::to_string(g) + ", " + std::to_string(f1) + ")";
  }
  return std::nullopt;
}

EquivalenceReport is_equivalence(const FinCategory& source, const FinCategory& target,
                                 const FinFunctor& f) {
  EquivalenceReport rep;
  rep.essentially_surjective = true;
  rep.full = true;
  rep.faithful = true;
  // fullness and faithfulness, hom-set by hom-set
  for (ObjId x = 0; x < source.object_count() && rep.full && rep.faithful; ++x)
    for (ObjId y = 0; y < source.object_count() && rep.full && rep.faithful; ++y) {
      auto dom_hom = source.hom(x, y);
      auto cod_hom = target.hom(f.object_map[x], f.object_map[y]);
      std::vector<MorId> hit;
      for (MorId m : dom_hom) {
        MorId fm = f.mor_map[m];
        if (std::find(hit.begin(), hit.end(), fm) != hit.end()) {
          rep.faithful = false;
          rep.witness = "two morphisms " + std::to_string(x) + "->" + std::to_string(y) + " share the image " + std::to_string(fm);
          break;
        }
        hit.push_back(fm);
      }
      if (rep.faithful)
        for (MorId m2 : cod_hom)
          if (std::find(hit.begin(), hit.end(), m2) == hit.end()) {
            rep.full = false;
            rep.witness = "morphism " + std::to_string(m2) + " between images of " + std::to_string(x) + ", " + std::to_string(y) + " is not hit";
            break;
          }
    }
  for (ObjId y = 0; y < target.object_count(); ++y) {
    bool reached = false;
    for (ObjId x = 0; x < source.object_count() && !reached; ++x)
      for (MorId m : target.hom(f.object_map[x], y))
        if (target.is_invertible(m)) {
          reached = true;
          break;
        }
    if (!reached) {
      rep.essentially_surjective = false;
      rep.witness = "object " + std::to_string(y) + " is not reached up to isomorphism";
      break;
    }
  }
  return rep;
}

FinCategory opposite(const FinCategory& c) {
  std::vector<ObjId> src(c.morphism_count()), tgt(c.morphism_count());
  for (MorId m = 0; m < c.morphism_count(); ++m) {
    src[m] = c.tgt(m);
    tgt[m] = c.src(m);
  }
  std::vector<MorId> ids(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) ids[x] = c.identity(x);
  return FinCategory::automatic(c.object_count(), std::move(src), std::move(tgt), std::move(ids),
                                [&c](MorId g, MorId f) { return c.compose(f, g); });
}

FinCategory product(const FinCategory& c, const FinCategory& d) {
  const std::uint64_t mc = c.morphism_count(), md = d.morphism_count();
  std::vector<ObjId> src(mc * md), tgt(mc * md);
  for (MorId f = 0; f < mc; ++f)
    for (MorId g = 0; g < md; ++g) {
      src[f * md + g] = c.src(f) * d.object_count() + d.src(g);
      tgt[f * md + g] = c.tgt(f) * d.object_count() + d.tgt(g);
    }
  std::vector<MorId> ids(static_cast<std::size_t>(c.object_count()) * d.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x)
    for (ObjId y = 0; y < d.object_count(); ++y)
      ids[static_cast<std::size_t>(x) * d.object_count() + y] =
          static_cast<MorId>(c.identity(x) * md + d.identity(y));
  return FinCategory::automatic(
      c.object_count() * d.object_count(), std::move(src), std::move(tgt), std::move(ids),
      [&c, &d, md](MorId g, MorId f) {
        MorId g1 = static_cast<MorId>(g / md), g2 = static_cast<MorId>(g % md);
        MorId f1 = static_cast<MorId>(f / md), f2 = static_cast<MorId>(f % md);
        return static_cast<MorId>(c.compose(g1, f1) * md + d.compose(g2, f2));
      });
}

TwCat tw_cat(const FinCategory& c) {
  TwCat out;
  const MorId m = c.morphism_count();
  std::vector<ObjId> src, tgt;
  std::map<std::tuple<ObjId, ObjId, MorId, MorId>, MorId> index;  // (g, g', k, h) -> id
  for (MorId g = 0; g < m; ++g)
    for (MorId g2 = 0; g2 < m; ++g2)
      for (MorId k : c.hom(c.src(g2), c.src(g)))
        for (MorId h : c.hom(c.tgt(g), c.tgt(g2)))
          if (c.compose(h, c.compose(g, k)) == g2) {
            index[{g, g2, k, h}] = static_cast<MorId>(src.size());
            src.push_back(g);
            tgt.push_back(g2);
            out.mor_pair.emplace_back(k, h);
          }
  std::vector<MorId> ids(m);
  for (MorId g = 0; g < m; ++g) {
    auto it = index.find({g, g, c.identity(c.src(g)), c.identity(c.tgt(g))});
    if (it == index.end()) throw ValidationError("tw_cat: identity pair missing");
    ids[g] = it->second;
  }
  out.category = FinCategory::dense(
      m, src, tgt, ids,
      [&](MorId q, MorId p) {
        auto [k1, h1] = out.mor_pair[p];
        auto [k2, h2] = out.mor_pair[q];
        auto it = index.find({src[p], tgt[q], c.compose(k1, k2), c.compose(h2, h1)});
        if (it == index.end()) throw ValidationError("tw_cat: composite pair missing");
        return it->second;
      });
  out.projection_target = product(opposite(c), c);
  out.projection.object_map.resize(m);
  for (MorId g = 0; g < m; ++g)
    out.projection.object_map[g] = c.src(g) * c.object_count() + c.tgt(g);
  out.projection.mor_map.resize(out.mor_pair.size());
  for (std::size_t i = 0; i < out.mor_pair.size(); ++i)
    out.projection.mor_map[i] = out.mor_pair[i].first * c.morphism_count() + out.mor_pair[i].second;
  return out;
}

UnderCategory under_category(const FinCategory& c, ObjId x) {
  if (x >= c.object_count()) throw DimensionError("under_category: object out of range");
  UnderCategory out;
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (c.src(f) == x) out.object_to_mor.push_back(f);
  const std::uint32_t n = static_cast<std::uint32_t>(out.object_to_mor.size());
  std::vector<ObjId> src, tgt;
  std::map<std::tuple<ObjId, ObjId, MorId>, MorId> index;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      MorId f = out.object_to_mor[a], g = out.object_to_mor[b];
      for (MorId h : c.hom(c.tgt(f), c.tgt(g)))
        if (c.compose(h, f) == g) {
          index[{a, b, h}] = static_cast<MorId>(src.size());
          src.push_back(a);
          tgt.push_back(b);
          out.mor_to_h.push_back(h);
        }
    }
  std::vector<MorId> ids(n);
  for (ObjId a = 0; a < n; ++a) {
    auto it = index.find({a, a, c.identity(c.tgt(out.object_to_mor[a]))});
    if (it == index.end()) throw ValidationError("under_category: identity triangle missing");
    ids[a] = it->second;
  }
  std::vector<ObjId> src_copy = src, tgt_copy = tgt;
  out.category = FinCategory::dense(
      n, std::move(src), std::move(tgt), std::move(ids),
      [&c, &out, &index, &src_copy, &tgt_copy](MorId q, MorId p) {
        MorId h = c.compose(out.mor_to_h[q], out.mor_to_h[p]);
        auto it = index.find({src_copy[p], tgt_copy[q], h});
        if (it == index.end()) throw ValidationError("under_category: composite triangle missing");
        return it->second;
      });
  return out;
}

QuotientResult quotient_by_congruence(const FinCategory& c,
                                      const std::vector<std::pair<MorId, MorId>>& pairs) {
  for (auto [a, b] : pairs) {
    if (a >= c.morphism_count() || b >= c.morphism_count())
      throw ValidationError("quotient: morphism id out of range");
    if (c.src(a) != c.src(b) || c.tgt(a) != c.tgt(b))
      throw ValidationError("quotient: pair (" + std::to_string(a) + ", " + std::to_string(b) + ") is not parallel");
  }
  UnionFind uf(c.morphism_count());
  for (auto [a, b] : pairs) uf.unite(a, b);
  // congruence: equivalent morphisms must stay equivalent after whiskering
  for (MorId f = 0; f < c.morphism_count(); ++f)
    for (MorId f2 = f + 1; f2 < c.morphism_count(); ++f2) {
      if (uf.find(f) != uf.find(f2)) continue;
      for (MorId h = 0; h < c.morphism_count(); ++h) {
        if (c.is_composable(h, f) && uf.find(c.compose(h, f)) != uf.find(c.compose(h, f2)))
          throw ValidationError("quotient: not a congruence, witness (" + std::to_string(h) + " . " +
                                std::to_string(f) + ") !~ (" + std::to_string(h) + " . " + std::to_string(f2) + ")");
        if (c.is_composable(f, h) && uf.find(c.compose(f, h)) != uf.find(c.compose(f2, h)))
          throw ValidationError("quotient: not a congruence, witness (" + std::to_string(f) + " . " +
                                std::to_string(h) + ") !~ (" + std::to_string(f2) + " . " + std::to_string(h) + ")");
      }
    }
  auto cls = uf.classes();
  const std::uint32_t qm = static_cast<std::uint32_t>(cls.representative.size());
  std::vector<ObjId> src(qm), tgt(qm);
  for (std::uint32_t k = 0; k < qm; ++k) {
    src[k] = c.src(static_cast<MorId>(cls.representative[k]));
    tgt[k] = c.tgt(static_cast<MorId>(cls.representative[k]));
  }
  std::vector<MorId> ids(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) ids[x] = cls.class_of[c.identity(x)];
  QuotientResult out;
  out.category = FinCategory::dense(
      c.object_count(), std::move(src), std::move(tgt), std::move(ids),
      [&c, &cls](MorId g, MorId f) {
        return cls.class_of[c.compose(static_cast<MorId>(cls.representative[g]),
                                      static_cast<MorId>(cls.representative[f]))];
      });
  out.projection.object_map.resize(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) out.projection.object_map[x] = x;
  out.projection.mor_map.assign(cls.class_of.begin(), cls.class_of.end());
  return out;
}

std::vector<std::vector<MorId>> composable_chains(const FinCategory& c, int length) {
  std::vector<std::vector<MorId>> out;
  if (length < 0) throw DimensionError("composable_chains: negative length");
  if (length == 0) {
    out.resize(c.object_count());
    return out;
  }
  std::vector<std::vector<MorId>> by_src(c.object_count());
  for (MorId f = 0; f < c.morphism_count(); ++f) by_src[c.src(f)].push_back(f);
  std::vector<MorId> cur;
  auto rec = [&](auto&& self, ObjId at) -> void {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (MorId f : by_src[at]) {
      cur.push_back(f);
      self(self, c.tgt(f));
      cur.pop_back();
    }
  };
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    cur.assign(1, f);
    rec(rec, c.tgt(f));
  }
  return out;
}

std::vector<ObjId> component_ids(const FinCategory& c) {
  UnionFind uf(c.object_count());
  for (MorId f = 0; f < c.morphism_count(); ++f) uf.unite(c.src(f), c.tgt(f));
  auto cls = uf.classes();
  return std::vector<ObjId>(cls.class_of.begin(), cls.class_of.end());
}

FullSubcategory full_subcategory(const FinCategory& c, std::vector<ObjId> objects) {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i] >= c.object_count())
      throw DimensionError("full_subcategory: object id out of range");
    if (i > 0 && objects[i] <= objects[i - 1])
      throw ValidationError("full_subcategory: objects must be strictly increasing");
  }
  std::vector<ObjId> back(c.object_count(), kNoObject);
  for (std::size_t i = 0; i < objects.size(); ++i)
    back[objects[i]] = static_cast<ObjId>(i);
  std::vector<MorId> mor_ids;
  std::vector<MorId> mor_back(c.morphism_count(), kNotComposable);
  std::vector<ObjId> src, tgt;
  std::vector<MorId> ids;
  for (MorId f = 0; f < c.morphism_count(); ++f) {
    if (back[c.src(f)] == kNoObject || back[c.tgt(f)] == kNoObject) continue;
    mor_back[f] = static_cast<MorId>(mor_ids.size());
    mor_ids.push_back(f);
    src.push_back(back[c.src(f)]);
    tgt.push_back(back[c.tgt(f)]);
  }
  for (ObjId x : objects) ids.push_back(mor_back[c.identity(x)]);
  FullSubcategory out{
      FinCategory::automatic(
          static_cast<ObjId>(objects.size()), src, tgt, ids,
          [&](MorId g, MorId f) { return mor_back[c.compose(mor_ids[g], mor_ids[f])]; }),
      std::move(objects), std::move(mor_ids), {}};
  out.inclusion = FinFunctor{out.objects, out.mor_ids};
  return out;
}

FullSubcategory skeleton(const FinCategory& c) {
  UnionFind uf(c.object_count());
  for (MorId f = 0; f < c.morphism_count(); ++f)
    if (c.is_invertible(f)) uf.unite(c.src(f), c.tgt(f));
  auto cls = uf.classes();
  std::vector<ObjId> reps(cls.representative.begin(), cls.representative.end());
  return full_subcategory(c, reps);
}

namespace {

// Order-independent local profile of an object: how many endomorphisms it
// has, plus the sorted multisets of outgoing/incoming hom sizes.
struct ObjProfile {
  std::size_t endo = 0;
  std::vector<std::size_t> out_sizes, in_sizes;
  bool operator==(const ObjProfile& o) const {
    return endo == o.endo && out_sizes == o.out_sizes && in_sizes == o.in_sizes;
  }
};

std::vector<ObjProfile> object_profiles(const FinCategory& c) {
  std::vector<ObjProfile> out(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) {
    out[x].endo = c.hom(x, x).size();
    for (ObjId y = 0; y < c.object_count(); ++y) {
      if (y == x) continue;
      out[x].out_sizes.push_back(c.hom(x, y).size());
      out[x].in_sizes.push_back(c.hom(y, x).size());
    }
    std::sort(out[x].out_sizes.begin(), out[x].out_sizes.end());
    std::sort(out[x].in_sizes.begin(), out[x].in_sizes.end());
  }
  return out;
}

}  // namespace

std::optional<FinFunctor> search_cat_iso(const FinCategory& a, const FinCategory& b,
                                         std::uint64_t node_budget) {
  if (a.object_count() != b.object_count()) return std::nullopt;
  if (a.morphism_count() != b.morphism_count()) return std::nullopt;
  const ObjId n = a.object_count();
  auto pa = object_profiles(a);
  auto pb = object_profiles(b);
  std::vector<ObjId> obj_map(n, kNoObject);
  std::vector<char> used(n, 0);
  std::uint64_t nodes = 0;

  // Given a full object bijection, try to extend it to morphisms pair by
  // pair, checking composition once everything is assigned.
  std::vector<MorId> mor_map;
  auto assign_mors = [&](auto&& self, ObjId x, ObjId y) -> bool {
    if (x == n) {
      for (MorId f = 0; f < a.morphism_count(); ++f)
        for (MorId g = 0; g < a.morphism_count(); ++g) {
          if (a.tgt(f) != a.src(g)) continue;
          if (mor_map[a.compose(g, f)] != b.compose(mor_map[g], mor_map[f])) return false;
        }
      return true;
    }
    if (y == n) return self(self, x + 1, 0);
    auto ha = a.hom(x, y);
    auto hb = b.hom(obj_map[x], obj_map[y]);
    if (ha.size() != hb.size()) return false;
    std::vector<MorId> image(hb.begin(), hb.end());
    std::sort(image.begin(), image.end());
    do {
      if (++nodes > node_budget) throw Error("search_cat_iso: node budget exhausted");
      bool ok = true;
      for (std::size_t i = 0; i < ha.size(); ++i) {
        const bool ida = ha[i] == a.identity(x);
        const bool idb = image[i] == b.identity(obj_map[x]);
        if (ida != idb) {
          ok = false;
          break;
        }
        mor_map[ha[i]] = image[i];
      }
      if (ok && self(self, x, y + 1)) return true;
    } while (std::next_permutation(image.begin(), image.end()));
    return false;
  };

  auto assign_objs = [&](auto&& self, ObjId x) -> bool {
    if (x == n) {
      mor_map.assign(a.morphism_count(), kNotComposable);
      return assign_mors(assign_mors, 0, 0);
    }
    for (ObjId y = 0; y < n; ++y) {
      if (used[y] || !(pa[x] == pb[y])) continue;
      if (++nodes > node_budget) throw Error("search_cat_iso: node budget exhausted");
      bool ok = true;
      for (ObjId x2 = 0; x2 < x && ok; ++x2) {
        ok = a.hom(x, x2).size() == b.hom(y, obj_map[x2]).size() &&
             a.hom(x2, x).size() == b.hom(obj_map[x2], y).size();
      }
      if (!ok) continue;
      obj_map[x] = y;
      used[y] = 1;
      if (self(self, x + 1)) return true;
      used[y] = 0;
      obj_map[x] = kNoObject;
    }
    return false;
  };

  if (!assign_objs(assign_objs, 0)) return std::nullopt;
  return FinFunctor{std::move(obj_map), std::move(mor_map)};
}

bool equivalent_categories(const FinCategory& a, const FinCategory& b) {
  auto sa = skeleton(a);
  auto sb = skeleton(b);
  return search_cat_iso(sa.category, sb.category).has_value();
}

}  // namespace twarrow::fincat
