#include "twarrow/gss.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace twarrow::gss {

namespace {

using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::FinGroupoid;
using fincat::MorId;
using fincat::ObjId;

std::shared_ptr<const FinGroupoid> share(FinGroupoid g) {
  return std::make_shared<const FinGroupoid>(std::move(g));
}

// Morphism ids grouped by source object, ascending within each group.
std::vector<std::vector<MorId>> out_edges(const FinCategory& c) {
  std::vector<std::vector<MorId>> by_src(c.object_count());
  for (MorId m = 0; m < c.morphism_count(); ++m) by_src[c.src(m)].push_back(m);
  return by_src;
}

std::vector<std::vector<MorId>> in_edges(const FinCategory& c) {
  std::vector<std::vector<MorId>> by_tgt(c.object_count());
  for (MorId m = 0; m < c.morphism_count(); ++m) by_tgt[c.tgt(m)].push_back(m);
  return by_tgt;
}

delta::SimplexMap vertex_map(int n, int i) { return delta::SimplexMap(n, {i}); }

delta::SimplexMap edge_map(int n, int i, int j) { return delta::SimplexMap(n, {i, j}); }

delta::SimplexMap collapse_map(int n) {
  return delta::SimplexMap(0, std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupoidSimplicialSpace

GroupoidSimplicialSpace::GroupoidSimplicialSpace(
    std::vector<std::shared_ptr<const FinGroupoid>> levels,
    std::vector<std::vector<FinFunctor>> faces, std::vector<std::vector<FinFunctor>> degens)
    : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degens)) {
  if (levels_.empty()) throw DimensionError("simplicial space: at least level 0 is required");
  for (const auto& ptr : levels_)
    if (!ptr) throw DimensionError("simplicial space: null level");
  const int t = trunc();
  if (faces_.size() != levels_.size() || !faces_[0].empty())
    throw ValidationError("simplicial space: face table shape mismatch");
  if (degens_.size() != levels_.size() || !degens_[static_cast<std::size_t>(t)].empty())
    throw ValidationError("simplicial space: degeneracy table shape mismatch");
  for (int n = 1; n <= t; ++n)
    if (faces_[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n) + 1)
      throw ValidationError("simplicial space: face table shape mismatch");
  for (int n = 0; n < t; ++n)
    if (degens_[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n) + 1)
      throw ValidationError("simplicial space: degeneracy table shape mismatch");
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      if (auto err = fincat::validate_functor(level(n), level(n - 1), face(n, i), false)) {
        std::ostringstream os;
        os << "simplicial space: face (" << n << "," << i << "): " << *err;
        throw ValidationError(os.str());
      }
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      if (auto err = fincat::validate_functor(level(n), level(n + 1), degen(n, i), false)) {
        std::ostringstream os;
        os << "simplicial space: degeneracy (" << n << "," << i << "): " << *err;
        throw ValidationError(os.str());
      }
}

const FinGroupoid& GroupoidSimplicialSpace::level(int n) const {
  if (n < 0 || n > trunc()) throw TruncationError("simplicial space: level out of range");
  return *levels_[static_cast<std::size_t>(n)];
}

std::shared_ptr<const FinGroupoid> GroupoidSimplicialSpace::level_ptr(int n) const {
  if (n < 0 || n > trunc()) throw TruncationError("simplicial space: level out of range");
  return levels_[static_cast<std::size_t>(n)];
}

const FinFunctor& GroupoidSimplicialSpace::face(int n, int i) const {
  if (n < 1 || n > trunc() || i < 0 || i > n)
    throw DimensionError("simplicial space: face index out of range");
  return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

const FinFunctor& GroupoidSimplicialSpace::degen(int n, int i) const {
  if (n < 0 || n >= trunc() || i < 0 || i > n)
    throw DimensionError("simplicial space: degeneracy index out of range");
  return degens_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

FinFunctor GroupoidSimplicialSpace::act(const delta::SimplexMap& op) const {
  const int n = op.cod();
  const int m = op.dom();
  if (n > trunc() || m > trunc())
    throw TruncationError("simplicial space: operator exceeds truncation");
  auto ez = delta::ez_factorize(op);
  FinFunctor f = fincat::identity_functor(level(n));
  int lvl = n;
  for (int idx : delta::face_word(ez.injection)) {
    f = fincat::compose_functors(face(lvl, idx), f);
    --lvl;
  }
  const auto dw = delta::degeneracy_word(ez.surjection);
  for (auto it = dw.rbegin(); it != dw.rend(); ++it) {
    f = fincat::compose_functors(degen(lvl, *it), f);
    ++lvl;
  }
  return f;
}

void GroupoidSimplicialSpace::validate() const {
  const int t = trunc();
  constexpr std::uint32_t kDeepLimit = 20000;
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      if (auto err = fincat::validate_functor(level(n), level(n - 1), face(n, i),
                                              level(n).morphism_count() <= kDeepLimit)) {
        std::ostringstream os;
        os << "face (" << n << "," << i << "): " << *err;
        throw ValidationError(os.str());
      }
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      if (auto err = fincat::validate_functor(level(n), level(n + 1), degen(n, i),
                                              level(n).morphism_count() <= kDeepLimit)) {
        std::ostringstream os;
        os << "degeneracy (" << n << "," << i << "): " << *err;
        throw ValidationError(os.str());
      }
  auto fail = [](const char* kind, int n, int i, int j) {
    std::ostringstream os;
    os << "simplicial identity " << kind << " fails at level " << n << " (i=" << i << ", j=" << j
       << ")";
    throw ValidationError(os.str());
  };
  for (int n = 2; n <= t; ++n)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (fincat::compose_functors(face(n - 1, i), face(n, j)) !=
            fincat::compose_functors(face(n - 1, j - 1), face(n, i)))
          fail("d.d", n, i, j);
  for (int n = 0; n + 2 <= t; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        if (fincat::compose_functors(degen(n + 1, i), degen(n, j)) !=
            fincat::compose_functors(degen(n + 1, j + 1), degen(n, i)))
          fail("s.s", n, i, j);
  for (int n = 0; n < t; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        FinFunctor lhs = fincat::compose_functors(face(n + 1, i), degen(n, j));
        if (i == j || i == j + 1) {
          if (lhs != fincat::identity_functor(level(n))) fail("d.s identity", n, i, j);
        } else if (i < j) {
          if (lhs != fincat::compose_functors(degen(n - 1, j - 1), face(n, i)))
            fail("d.s", n, i, j);
        } else {
          if (lhs != fincat::compose_functors(degen(n - 1, j), face(n, i - 1)))
            fail("d.s", n, i, j);
        }
      }
}

bool GroupoidSimplicialSpace::operator==(const GroupoidSimplicialSpace& o) const {
  if (trunc() != o.trunc()) return false;
  for (int n = 0; n <= trunc(); ++n)
    if (!(*levels_[static_cast<std::size_t>(n)] == *o.levels_[static_cast<std::size_t>(n)]))
      return false;
  return faces_ == o.faces_ && degens_ == o.degens_;
}

void validate_space_map(const GroupoidSimplicialSpace& src, const GroupoidSimplicialSpace& dst,
                        const SpaceMap& f) {
  if (f.level.size() != static_cast<std::size_t>(src.trunc()) + 1)
    throw ValidationError("space map: level count mismatch");
  if (dst.trunc() < src.trunc()) throw TruncationError("space map: target truncated too low");
  constexpr std::uint32_t kDeepLimit = 20000;
  for (int n = 0; n <= src.trunc(); ++n)
    if (auto err = fincat::validate_functor(src.level(n), dst.level(n),
                                            f.level[static_cast<std::size_t>(n)],
                                            src.level(n).morphism_count() <= kDeepLimit)) {
      std::ostringstream os;
      os << "space map: level " << n << ": " << *err;
      throw ValidationError(os.str());
    }
  for (int n = 1; n <= src.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      if (fincat::compose_functors(f.level[static_cast<std::size_t>(n) - 1], src.face(n, i)) !=
          fincat::compose_functors(dst.face(n, i), f.level[static_cast<std::size_t>(n)])) {
        std::ostringstream os;
        os << "space map: face (" << n << "," << i << ") square does not commute";
        throw ValidationError(os.str());
      }
  for (int n = 0; n < src.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      if (fincat::compose_functors(f.level[static_cast<std::size_t>(n) + 1], src.degen(n, i)) !=
          fincat::compose_functors(dst.degen(n, i), f.level[static_cast<std::size_t>(n)])) {
        std::ostringstream os;
        os << "space map: degeneracy (" << n << "," << i << ") square does not commute";
        throw ValidationError(os.str());
      }
}

// ---------------------------------------------------------------------------
// Constructions of spaces

GroupoidSimplicialSpace discrete_embedding(const sset::FinSimplicialSet& s) {
  const int t = s.trunc();
  std::vector<std::shared_ptr<const FinGroupoid>> levels;
  for (int n = 0; n <= t; ++n) {
    const std::uint32_t cnt = s.count(n);
    std::vector<ObjId> ids(cnt);
    for (std::uint32_t i = 0; i < cnt; ++i) ids[i] = i;
    levels.push_back(share(FinGroupoid::from_category(FinCategory::thin(cnt, ids, ids))));
  }
  auto table = [&](const delta::SimplexMap& op, int from) {
    FinFunctor f;
    f.object_map.resize(s.count(from));
    for (std::uint32_t cell = 0; cell < s.count(from); ++cell)
      f.object_map[cell] = s.act(op, cell);
    f.mor_map = f.object_map;
    return f;
  };
  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(t) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(t) + 1);
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(table(delta::face(n, i), n));
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      degens[static_cast<std::size_t>(n)].push_back(table(delta::degeneracy(n, i), n));
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

GroupoidSimplicialSpace classifying_diagram(const fincat::FinCategory& c, int trunc) {
  if (trunc < 0) throw DimensionError("classifying_diagram: negative truncation");
  auto nv = sset::nerve(c, trunc);
  const std::size_t t1 = static_cast<std::size_t>(trunc) + 1;

  // Vertex lists per chain.
  std::vector<std::vector<std::vector<ObjId>>> vtx(t1);
  for (int n = 0; n <= trunc; ++n) {
    const auto& chs = nv.chains[static_cast<std::size_t>(n)];
    vtx[static_cast<std::size_t>(n)].resize(chs.size());
    for (std::size_t i = 0; i < chs.size(); ++i) {
      auto& v = vtx[static_cast<std::size_t>(n)][i];
      if (n == 0) {
        v = {static_cast<ObjId>(i)};
      } else {
        v.resize(static_cast<std::size_t>(n) + 1);
        v[0] = c.src(chs[i][0]);
        for (int k = 1; k <= n; ++k) v[static_cast<std::size_t>(k)] = c.tgt(chs[i][k - 1]);
      }
    }
  }

  std::vector<char> inv(c.morphism_count(), 0);
  for (MorId m = 0; m < c.morphism_count(); ++m) inv[m] = c.is_invertible(m) ? 1 : 0;

  std::vector<std::shared_ptr<const FinGroupoid>> levels(t1);
  // Non-thin bookkeeping: component tuple per level morphism, and its id.
  // Lookup keys carry the source and target chain in front of the tuple:
  // distinct parallel chains can share a component tuple verbatim.
  std::vector<std::vector<std::vector<MorId>>> tuples(t1);
  std::vector<std::map<std::vector<MorId>, MorId>> tuple_id(t1);
  auto keyed = [](ObjId i, ObjId j, const std::vector<MorId>& t) {
    std::vector<MorId> k;
    k.reserve(t.size() + 2);
    k.push_back(i);
    k.push_back(j);
    k.insert(k.end(), t.begin(), t.end());
    return k;
  };

  if (c.is_thin()) {
    // Unique invertible morphism per object pair, if any.
    const ObjId nob = c.object_count();
    std::vector<MorId> invhom(static_cast<std::size_t>(nob) * nob, fincat::kNotComposable);
    for (MorId m = 0; m < c.morphism_count(); ++m)
      if (inv[m]) invhom[static_cast<std::size_t>(c.src(m)) * nob + c.tgt(m)] = m;
    for (int n = 0; n <= trunc; ++n) {
      const auto& v = vtx[static_cast<std::size_t>(n)];
      const std::uint32_t cnt = nv.sset.count(n);
      std::vector<ObjId> src, tgt;
      for (std::uint32_t i = 0; i < cnt; ++i)
        for (std::uint32_t j = 0; j < cnt; ++j) {
          bool ok = true;
          for (int k = 0; k <= n && ok; ++k)
            ok = invhom[static_cast<std::size_t>(v[i][static_cast<std::size_t>(k)]) * nob +
                        v[j][static_cast<std::size_t>(k)]] != fincat::kNotComposable;
          if (ok) {
            src.push_back(i);
            tgt.push_back(j);
          }
        }
      levels[static_cast<std::size_t>(n)] =
          share(FinGroupoid::from_category(FinCategory::thin(cnt, src, tgt)));
    }
  } else {
    for (int n = 0; n <= trunc; ++n) {
      const auto& v = vtx[static_cast<std::size_t>(n)];
      const auto& chs = nv.chains[static_cast<std::size_t>(n)];
      const std::uint32_t cnt = nv.sset.count(n);
      std::vector<ObjId> src, tgt;
      std::vector<MorId> ids;
      auto& tup = tuples[static_cast<std::size_t>(n)];
      auto& tid = tuple_id[static_cast<std::size_t>(n)];
      std::vector<MorId> cur(static_cast<std::size_t>(n) + 1);
      for (std::uint32_t i = 0; i < cnt; ++i)
        for (std::uint32_t j = 0; j < cnt; ++j) {
          auto rec = [&](auto&& self, int k) -> void {
            if (k > n) {
              tid[keyed(i, j, cur)] = static_cast<MorId>(tup.size());
              tup.push_back(cur);
              src.push_back(i);
              tgt.push_back(j);
              return;
            }
            for (MorId u : c.hom(v[i][static_cast<std::size_t>(k)], v[j][static_cast<std::size_t>(k)])) {
              if (!inv[u]) continue;
              if (k > 0) {
                const MorId fk = chs[i][static_cast<std::size_t>(k) - 1];
                const MorId gk = chs[j][static_cast<std::size_t>(k) - 1];
                if (c.compose(u, fk) != c.compose(gk, cur[static_cast<std::size_t>(k) - 1]))
                  continue;
              }
              cur[static_cast<std::size_t>(k)] = u;
              self(self, k + 1);
            }
          };
          rec(rec, 0);
        }
      for (std::uint32_t i = 0; i < cnt; ++i) {
        std::vector<MorId> idt(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
          idt[static_cast<std::size_t>(k)] = c.identity(v[i][static_cast<std::size_t>(k)]);
        ids.push_back(tid.at(keyed(i, i, idt)));
      }
      auto composite = [&tup, &tid, &src, &tgt, &keyed, &c, n](MorId g, MorId f) {
        std::vector<MorId> out(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
          out[static_cast<std::size_t>(k)] =
              c.compose(tup[g][static_cast<std::size_t>(k)], tup[f][static_cast<std::size_t>(k)]);
        return tid.at(keyed(src[f], tgt[g], out));
      };
      levels[static_cast<std::size_t>(n)] = share(
          FinGroupoid::from_category(FinCategory::automatic(cnt, src, tgt, ids, composite)));
    }
  }

  // Structure functors. Object maps come from the nerve; morphism maps are
  // hom lookups (thin) or tuple reindexings (general).
  auto functor_for = [&](const delta::SimplexMap& op, int from, int to) {
    FinFunctor f;
    const auto& lf = *levels[static_cast<std::size_t>(from)];
    const auto& lt = *levels[static_cast<std::size_t>(to)];
    f.object_map.resize(lf.object_count());
    for (std::uint32_t cell = 0; cell < lf.object_count(); ++cell)
      f.object_map[cell] = nv.sset.act(op, cell);
    f.mor_map.resize(lf.morphism_count());
    if (c.is_thin()) {
      for (MorId m = 0; m < lf.morphism_count(); ++m) {
        auto span = lt.hom(f.object_map[lf.src(m)], f.object_map[lf.tgt(m)]);
        if (span.empty()) throw Error("classifying_diagram: missing image morphism");
        f.mor_map[m] = span[0];
      }
    } else {
      const auto& tf = tuples[static_cast<std::size_t>(from)];
      const auto& tt = tuple_id[static_cast<std::size_t>(to)];
      for (MorId m = 0; m < lf.morphism_count(); ++m) {
        std::vector<MorId> out(static_cast<std::size_t>(to) + 1);
        for (int k = 0; k <= to; ++k)
          out[static_cast<std::size_t>(k)] = tf[m][static_cast<std::size_t>(op(k))];
        auto it = tt.find(keyed(f.object_map[lf.src(m)], f.object_map[lf.tgt(m)], out));
        if (it == tt.end()) throw Error("classifying_diagram: missing image morphism");
        f.mor_map[m] = it->second;
      }
    }
    return f;
  };

  std::vector<std::vector<FinFunctor>> faces(t1);
  std::vector<std::vector<FinFunctor>> degens(t1);
  for (int n = 1; n <= trunc; ++n)
    for (int i = 0; i <= n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(functor_for(delta::face(n, i), n, n - 1));
  for (int n = 0; n < trunc; ++n)
    for (int i = 0; i <= n; ++i)
      degens[static_cast<std::size_t>(n)].push_back(functor_for(delta::degeneracy(n, i), n, n + 1));
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

GroupoidSimplicialSpace truncate_space(const GroupoidSimplicialSpace& w, int trunc) {
  if (trunc < 0 || trunc > w.trunc())
    throw TruncationError("truncate_space: truncation out of range");
  std::vector<std::shared_ptr<const FinGroupoid>> levels;
  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    levels.push_back(w.level_ptr(n));
    if (n >= 1)
      for (int i = 0; i <= n; ++i) faces[static_cast<std::size_t>(n)].push_back(w.face(n, i));
    if (n < trunc)
      for (int i = 0; i <= n; ++i) degens[static_cast<std::size_t>(n)].push_back(w.degen(n, i));
  }
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

GroupoidSimplicialSpace op_space(const GroupoidSimplicialSpace& w) {
  const int t = w.trunc();
  std::vector<std::shared_ptr<const FinGroupoid>> levels;
  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(t) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(t) + 1);
  for (int n = 0; n <= t; ++n) {
    levels.push_back(w.level_ptr(n));
    if (n >= 1)
      for (int i = 0; i <= n; ++i) faces[static_cast<std::size_t>(n)].push_back(w.face(n, n - i));
    if (n < t)
      for (int i = 0; i <= n; ++i)
        degens[static_cast<std::size_t>(n)].push_back(w.degen(n, n - i));
  }
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

ProductSpace product_space(const GroupoidSimplicialSpace& a, const GroupoidSimplicialSpace& b) {
  if (a.trunc() != b.trunc()) throw TruncationError("product_space: truncation mismatch");
  const int t = a.trunc();
  std::vector<std::shared_ptr<const FinGroupoid>> levels;
  for (int n = 0; n <= t; ++n)
    levels.push_back(share(FinGroupoid::from_category(fincat::product(a.level(n), b.level(n)))));
  auto pairing = [&](const FinFunctor& fa, const FinFunctor& fb, int from, int to) {
    FinFunctor f;
    const std::uint32_t nb_from = b.level(from).object_count();
    const std::uint32_t nb_to = b.level(to).object_count();
    const std::uint32_t mb_from = b.level(from).morphism_count();
    const std::uint32_t mb_to = b.level(to).morphism_count();
    f.object_map.resize(levels[static_cast<std::size_t>(from)]->object_count());
    for (std::uint32_t x = 0; x < f.object_map.size(); ++x)
      f.object_map[x] = fa.object_map[x / nb_from] * nb_to + fb.object_map[x % nb_from];
    f.mor_map.resize(levels[static_cast<std::size_t>(from)]->morphism_count());
    for (std::uint32_t m = 0; m < f.mor_map.size(); ++m)
      f.mor_map[m] = fa.mor_map[m / mb_from] * mb_to + fb.mor_map[m % mb_from];
    return f;
  };
  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(t) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(t) + 1);
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(
          pairing(a.face(n, i), b.face(n, i), n, n - 1));
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      degens[static_cast<std::size_t>(n)].push_back(
          pairing(a.degen(n, i), b.degen(n, i), n, n + 1));
  ProductSpace out{GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens)),
                   {}, {}};
  for (int n = 0; n <= t; ++n) {
    const std::uint32_t nb = b.level(n).object_count();
    const std::uint32_t mb = b.level(n).morphism_count();
    FinFunctor p1, p2;
    p1.object_map.resize(out.space.level(n).object_count());
    p2.object_map.resize(out.space.level(n).object_count());
    for (std::uint32_t x = 0; x < p1.object_map.size(); ++x) {
      p1.object_map[x] = x / nb;
      p2.object_map[x] = x % nb;
    }
    p1.mor_map.resize(out.space.level(n).morphism_count());
    p2.mor_map.resize(out.space.level(n).morphism_count());
    for (std::uint32_t m = 0; m < p1.mor_map.size(); ++m) {
      p1.mor_map[m] = m / mb;
      p2.mor_map[m] = m % mb;
    }
    out.pr1.level.push_back(std::move(p1));
    out.pr2.level.push_back(std::move(p2));
  }
  return out;
}

GroupoidSimplicialSpace tw_space(const GroupoidSimplicialSpace& w, int trunc) {
  if (trunc < 0) throw DimensionError("tw_space: negative truncation");
  if (w.trunc() < 2 * trunc + 1)
    throw TruncationError("tw_space: input must be truncated at 2*trunc+1 or higher");
  std::vector<std::shared_ptr<const FinGroupoid>> levels;
  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    levels.push_back(w.level_ptr(2 * n + 1));
    if (n >= 1)
      for (int i = 0; i <= n; ++i)
        faces[static_cast<std::size_t>(n)].push_back(w.act(delta::q_map(delta::face(n, i))));
    if (n < trunc)
      for (int i = 0; i <= n; ++i)
        degens[static_cast<std::size_t>(n)].push_back(
            w.act(delta::q_map(delta::degeneracy(n, i))));
  }
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

TwistedProjectionSpace twisted_projection_space(const GroupoidSimplicialSpace& w, int trunc) {
  GroupoidSimplicialSpace tw = tw_space(w, trunc);
  GroupoidSimplicialSpace base = truncate_space(w, trunc);
  GroupoidSimplicialSpace op_base = op_space(base);
  ProductSpace target = product_space(op_base, base);
  SpaceMap to_op_base, to_base, projection;
  for (int n = 0; n <= trunc; ++n) {
    to_op_base.level.push_back(w.act(delta::block_inclusion_left(n)));
    to_base.level.push_back(w.act(delta::block_inclusion_right(n)));
    const FinFunctor& fa = to_op_base.level.back();
    const FinFunctor& fb = to_base.level.back();
    const std::uint32_t nb = base.level(n).object_count();
    const std::uint32_t mb = base.level(n).morphism_count();
    FinFunctor pr;
    pr.object_map.resize(tw.level(n).object_count());
    for (std::uint32_t x = 0; x < pr.object_map.size(); ++x)
      pr.object_map[x] = fa.object_map[x] * nb + fb.object_map[x];
    pr.mor_map.resize(tw.level(n).morphism_count());
    for (std::uint32_t m = 0; m < pr.mor_map.size(); ++m)
      pr.mor_map[m] = fa.mor_map[m] * mb + fb.mor_map[m];
    projection.level.push_back(std::move(pr));
  }
  return TwistedProjectionSpace{std::move(tw),         std::move(op_base), std::move(base),
                                std::move(target),     std::move(to_op_base),
                                std::move(to_base),    std::move(projection)};
}

// ---------------------------------------------------------------------------
// Pseudo-pullbacks and homotopy pullback squares

PseudoPullback pseudo_pullback(const FinGroupoid& a, const FinGroupoid& b, const FinGroupoid& c,
                               const FinFunctor& f, const FinFunctor& g) {
  if (auto err = fincat::validate_functor(a, c, f, false))
    throw ValidationError("pseudo_pullback: left leg: " + *err);
  if (auto err = fincat::validate_functor(b, c, g, false))
    throw ValidationError("pseudo_pullback: right leg: " + *err);
  PseudoPullback out;
  std::vector<ObjId> oa, ob;
  std::vector<MorId> ophi;
  for (ObjId av = 0; av < a.object_count(); ++av)
    for (ObjId bv = 0; bv < b.object_count(); ++bv)
      for (MorId phi : c.hom(f.object_map[av], g.object_map[bv])) {
        out.object_index[{av, bv, phi}] = static_cast<ObjId>(oa.size());
        oa.push_back(av);
        ob.push_back(bv);
        ophi.push_back(phi);
      }
  const auto a_out = out_edges(a);
  const auto b_out = out_edges(b);
  std::vector<ObjId> src, tgt;
  std::vector<ObjId> mo;
  std::vector<MorId> mm, mk;
  for (ObjId o = 0; o < oa.size(); ++o)
    for (MorId m : a_out[oa[o]])
      for (MorId k : b_out[ob[o]]) {
        const MorId phi2 =
            c.compose(c.compose(g.mor_map[k], ophi[o]), c.inverse(f.mor_map[m]));
        out.morphism_index[{o, m, k}] = static_cast<MorId>(src.size());
        src.push_back(o);
        tgt.push_back(out.object_index.at({a.tgt(m), b.tgt(k), phi2}));
        mo.push_back(o);
        mm.push_back(m);
        mk.push_back(k);
      }
  std::vector<MorId> ids;
  for (ObjId o = 0; o < oa.size(); ++o)
    ids.push_back(out.morphism_index.at({o, a.identity(oa[o]), b.identity(ob[o])}));
  auto composite = [&](MorId g2, MorId f2) {
    return out.morphism_index.at(
        {mo[f2], a.compose(mm[g2], mm[f2]), b.compose(mk[g2], mk[f2])});
  };
  out.groupoid = FinGroupoid::from_category(FinCategory::automatic(
      static_cast<std::uint32_t>(oa.size()), src, tgt, ids, composite));
  out.pr1 = FinFunctor{oa, mm};
  out.pr2 = FinFunctor{ob, mk};
  out.iso = std::move(ophi);
  return out;
}

fincat::EquivalenceReport groupoid_equivalence(const FinGroupoid& a, const FinGroupoid& b,
                                               const FinFunctor& f) {
  return fincat::is_equivalence(a, b, f);
}

CheckReport homotopy_pullback_check(const FinGroupoid& x, const FinGroupoid& a,
                                    const FinGroupoid& b, const FinGroupoid& c,
                                    const FinFunctor& left, const FinFunctor& top,
                                    const FinFunctor& bottom, const FinFunctor& right) {
  if (!(fincat::compose_functors(bottom, left) == fincat::compose_functors(right, top)))
    return {false, "square does not commute strictly"};
  auto pb = pseudo_pullback(a, b, c, bottom, right);
  FinFunctor cmp;
  cmp.object_map.resize(x.object_count());
  for (ObjId xo = 0; xo < x.object_count(); ++xo)
    cmp.object_map[xo] = pb.object_index.at(
        {left.object_map[xo], top.object_map[xo],
         c.identity(bottom.object_map[left.object_map[xo]])});
  cmp.mor_map.resize(x.morphism_count());
  for (MorId m = 0; m < x.morphism_count(); ++m)
    cmp.mor_map[m] =
        pb.morphism_index.at({cmp.object_map[x.src(m)], left.mor_map[m], top.mor_map[m]});
  if (auto err = fincat::validate_functor(x, pb.groupoid, cmp, x.morphism_count() <= 20000))
    throw Error("homotopy_pullback_check: comparison is not a functor: " + *err);
  auto rep = fincat::is_equivalence(x, pb.groupoid, cmp);
  if (rep.ok()) return {true, ""};
  return {false, "comparison with the pseudo-pullback is not an equivalence: " + rep.witness};
}

// ---------------------------------------------------------------------------
// Segal condition

CheckReport segal_check(const GroupoidSimplicialSpace& w, int n_max) {
  if (n_max < 0) throw DimensionError("segal_check: negative degree");
  if (n_max > w.trunc()) throw TruncationError("segal_check: degree exceeds truncation");
  if (n_max < 2) return {true, ""};
  const auto& g0 = w.level(0);
  const auto& g1 = w.level(1);
  const auto& d0 = w.face(1, 0);  // target vertex of an edge
  const auto& d1 = w.face(1, 1);  // source vertex of an edge
  for (int n = 2; n <= n_max; ++n) {
    const auto& gn = w.level(n);
    std::vector<FinFunctor> sp;
    for (int i = 0; i < n; ++i) sp.push_back(w.act(edge_map(n, i, i + 1)));
    const bool all_thin = gn.is_thin() && g1.is_thin() && g0.is_thin();

    // Fullness and faithfulness over every object pair of level n.
    for (ObjId x = 0; x < gn.object_count(); ++x)
      for (ObjId y = 0; y < gn.object_count(); ++y) {
        if (all_thin) {
          bool target_nonempty = true;
          for (int i = 0; i < n && target_nonempty; ++i)
            target_nonempty = !g1.hom(sp[static_cast<std::size_t>(i)].object_map[x],
                                      sp[static_cast<std::size_t>(i)].object_map[y])
                                   .empty();
          if (target_nonempty && gn.hom(x, y).empty()) {
            std::ostringstream os;
            os << "degree " << n << ": spine images of objects " << x << " and " << y
               << " are connected but the objects are not (fullness fails)";
            return {false, os.str()};
          }
          continue;
        }
        std::set<std::vector<MorId>> image;
        for (MorId m : gn.hom(x, y)) {
          std::vector<MorId> t(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            t[static_cast<std::size_t>(i)] = sp[static_cast<std::size_t>(i)].mor_map[m];
          if (!image.insert(t).second) {
            std::ostringstream os;
            os << "degree " << n << ": two morphisms " << x << " -> " << y
               << " share the same spine image (faithfulness fails)";
            return {false, os.str()};
          }
        }
        // Walk the target hom-set: componentwise morphisms whose vertex
        // images match up along the spine.
        std::vector<MorId> t(static_cast<std::size_t>(n));
        std::string failure;
        auto rec = [&](auto&& self, int i) -> bool {
          if (i == n) {
            if (!image.count(t)) {
              std::ostringstream os;
              os << "degree " << n << ": a spine tuple between objects " << x << " and " << y
                 << " is not the image of any morphism (fullness fails)";
              failure = os.str();
              return false;
            }
            return true;
          }
          for (MorId m : g1.hom(sp[static_cast<std::size_t>(i)].object_map[x],
                                sp[static_cast<std::size_t>(i)].object_map[y])) {
            if (i > 0 && d1.mor_map[m] != d0.mor_map[t[static_cast<std::size_t>(i) - 1]]) continue;
            t[static_cast<std::size_t>(i)] = m;
            if (!self(self, i + 1)) return false;
          }
          return true;
        };
        if (!rec(rec, 0)) return {false, failure};
      }

    // Essential surjectivity.
    if (all_thin) {
      const auto comp0 = fincat::component_ids(g0);
      const auto comp1 = fincat::component_ids(g1);
      std::set<std::vector<ObjId>> achieved;
      for (ObjId x = 0; x < gn.object_count(); ++x) {
        std::vector<ObjId> key(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
          key[static_cast<std::size_t>(i)] = comp1[sp[static_cast<std::size_t>(i)].object_map[x]];
        achieved.insert(key);
      }
      std::vector<ObjId> pick(static_cast<std::size_t>(n));
      std::string failure;
      auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) {
          std::vector<ObjId> key(static_cast<std::size_t>(n));
          for (int j = 0; j < n; ++j)
            key[static_cast<std::size_t>(j)] = comp1[pick[static_cast<std::size_t>(j)]];
          if (!achieved.count(key)) {
            std::ostringstream os;
            os << "degree " << n << ": the spine tuple starting with edge "
               << pick[0] << " is not reached by any object (essential surjectivity fails)";
            failure = os.str();
            return false;
          }
          return true;
        }
        for (ObjId a = 0; a < g1.object_count(); ++a) {
          if (i > 0 && comp0[d1.object_map[a]] !=
                           comp0[d0.object_map[pick[static_cast<std::size_t>(i) - 1]]])
            continue;
          pick[static_cast<std::size_t>(i)] = a;
          if (!self(self, i + 1)) return false;
        }
        return true;
      };
      if (!rec(rec, 0)) return {false, failure};
    } else {
      // Enumerate target objects (edges plus connecting isomorphisms), then
      // search for an object of level n hitting each up to isomorphism.
      std::vector<ObjId> edges(static_cast<std::size_t>(n));
      std::vector<MorId> phis(static_cast<std::size_t>(n) - 1);
      std::string failure;
      auto reaches = [&]() -> bool {
        std::vector<MorId> psi(static_cast<std::size_t>(n));
        for (ObjId x = 0; x < gn.object_count(); ++x) {
          auto rec = [&](auto&& self, int i) -> bool {
            if (i == n) return true;
            for (MorId m : g1.hom(sp[static_cast<std::size_t>(i)].object_map[x],
                                  edges[static_cast<std::size_t>(i)])) {
              if (i > 0 &&
                  g0.compose(phis[static_cast<std::size_t>(i) - 1],
                             d0.mor_map[psi[static_cast<std::size_t>(i) - 1]]) !=
                      d1.mor_map[m])
                continue;
              psi[static_cast<std::size_t>(i)] = m;
              if (self(self, i + 1)) return true;
            }
            return false;
          };
          if (rec(rec, 0)) return true;
        }
        return false;
      };
      auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) {
          if (!reaches()) {
            std::ostringstream os;
            os << "degree " << n << ": the spine tuple starting with edge " << edges[0]
               << " is not reached by any object (essential surjectivity fails)";
            failure = os.str();
            return false;
          }
          return true;
        }
        for (ObjId a = 0; a < g1.object_count(); ++a) {
          edges[static_cast<std::size_t>(i)] = a;
          if (i == 0) {
            if (!self(self, 1)) return false;
            continue;
          }
          for (MorId phi : g0.hom(d0.object_map[edges[static_cast<std::size_t>(i) - 1]],
                                  d1.object_map[a])) {
            phis[static_cast<std::size_t>(i) - 1] = phi;
            if (!self(self, i + 1)) return false;
          }
        }
        return true;
      };
      if (!rec(rec, 0)) return {false, failure};
    }
  }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Homotopy category

MorId HoResult::class_of_triple(const Triple& t) const {
  auto it = triple_class.find({t.u, t.alpha, t.beta});
  if (it == triple_class.end()) throw DimensionError("homotopy class lookup: unknown triple");
  return it->second;
}

HoResult ho_category(const GroupoidSimplicialSpace& w) {
  if (w.trunc() < 3) throw TruncationError("ho_category: truncation 3 or higher required");
  if (auto sr = segal_check(w, 3); !sr.pass)
    throw ValidationError("ho_category: Segal condition fails: " + sr.witness);
  const auto& g0 = w.level(0);
  const auto& g1 = w.level(1);
  const auto& g2 = w.level(2);
  const auto& d0 = w.face(1, 0);
  const auto& d1 = w.face(1, 1);
  const auto in0 = in_edges(g0);
  const auto out1 = out_edges(g1);

  // Nodes (u, alpha, beta) in lexicographic order, grouped by the anchored
  // endpoint pair (x, y) = (src alpha, src beta).
  std::vector<std::array<std::uint32_t, 3>> nodes;
  std::map<std::array<std::uint32_t, 3>, std::size_t> pos;
  std::map<std::pair<ObjId, ObjId>, std::vector<std::size_t>> by_pair;
  for (ObjId u = 0; u < g1.object_count(); ++u)
    for (MorId alpha : in0[d1.object_map[u]])
      for (MorId beta : in0[d0.object_map[u]]) {
        pos[{u, alpha, beta}] = nodes.size();
        by_pair[{g0.src(alpha), g0.src(beta)}].push_back(nodes.size());
        nodes.push_back({u, alpha, beta});
      }
  UnionFind uf(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [u, alpha, beta] = nodes[i];
    for (MorId m : out1[u]) {
      const ObjId u2 = g1.tgt(m);
      const MorId alpha2 = g0.compose(d1.mor_map[m], alpha);
      const MorId beta2 = g0.compose(d0.mor_map[m], beta);
      uf.unite(i, pos.at({u2, alpha2, beta2}));
    }
  }

  HoResult out;
  std::vector<ObjId> src, tgt;
  std::vector<std::size_t> root_of_class;
  std::map<std::size_t, MorId> root_class;
  for (const auto& [pr, list] : by_pair)
    for (std::size_t node : list) {
      const std::size_t root = uf.find(node);
      if (root_class.count(root)) continue;
      root_class[root] = static_cast<MorId>(src.size());
      src.push_back(pr.first);
      tgt.push_back(pr.second);
      out.rep.push_back({nodes[root][0], nodes[root][1], nodes[root][2]});
    }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.triple_class[nodes[i]] = root_class.at(uf.find(i));

  out.class_of.resize(g1.object_count());
  for (ObjId u = 0; u < g1.object_count(); ++u)
    out.class_of[u] = out.triple_class.at(
        {u, g0.identity(d1.object_map[u]), g0.identity(d0.object_map[u])});

  const auto& s0 = w.degen(0, 0);
  std::vector<MorId> ids;
  for (ObjId x = 0; x < g0.object_count(); ++x)
    ids.push_back(out.triple_class.at({s0.object_map[x], g0.identity(x), g0.identity(x)}));

  const auto e1 = w.act(edge_map(2, 0, 1));
  const auto e2 = w.act(edge_map(2, 1, 2));
  const auto e02 = w.act(edge_map(2, 0, 2));
  auto lift = [&](const HoResult::Triple& f, const HoResult::Triple& g, bool ascending)
      -> std::optional<std::array<std::uint32_t, 3>> {
    const MorId phi = g0.compose(g.alpha, g0.inverse(f.beta));
    for (std::uint32_t step = 0; step < g2.object_count(); ++step) {
      const ObjId w2 =
          ascending ? step : static_cast<ObjId>(g2.object_count() - 1 - step);
      auto h1 = g1.hom(e1.object_map[w2], f.u);
      auto h2 = g1.hom(e2.object_map[w2], g.u);
      for (std::size_t a = 0; a < h1.size(); ++a) {
        const MorId m1 = ascending ? h1[a] : h1[h1.size() - 1 - a];
        const MorId need = g0.compose(phi, d0.mor_map[m1]);
        for (std::size_t b = 0; b < h2.size(); ++b) {
          const MorId m2 = ascending ? h2[b] : h2[h2.size() - 1 - b];
          if (d1.mor_map[m2] != need) continue;
          return std::array<std::uint32_t, 3>{
              e02.object_map[w2], g0.compose(g0.inverse(d1.mor_map[m1]), f.alpha),
              g0.compose(g0.inverse(d0.mor_map[m2]), g.beta)};
        }
      }
    }
    return std::nullopt;
  };
  auto composite = [&](MorId gm, MorId fm) {
    const auto& f = out.rep[fm];
    const auto& g = out.rep[gm];
    auto first = lift(f, g, true);
    auto second = lift(f, g, false);
    if (!first || !second) throw Error("ho_category: no Segal lift for a composable pair");
    const MorId c1 = out.triple_class.at(*first);
    const MorId c2 = out.triple_class.at(*second);
    if (c1 != c2)
      throw ValidationError("ho_category: composite depends on the chosen Segal lift");
    return c1;
  };
  out.category = FinCategory::automatic(g0.object_count(), src, tgt, ids, composite);
  if (auto err = out.category.validate())
    throw ValidationError("ho_category: result is not a category: " + *err);
  return out;
}

HoComparison ho_comparison_functor(const GroupoidSimplicialSpace& w) {
  auto tw = tw_space(w, 3);
  HoResult ho_w = ho_category(w);
  HoResult ho_t = ho_category(tw);
  fincat::TwCat twho = fincat::tw_cat(ho_w.category);
  const auto& d0 = w.face(1, 0);
  const auto& d1 = w.face(1, 1);
  const auto e01 = w.act(edge_map(3, 0, 1));
  const auto e23 = w.act(edge_map(3, 2, 3));
  FinFunctor f;
  f.object_map.resize(ho_t.category.object_count());
  for (ObjId u = 0; u < ho_t.category.object_count(); ++u)
    f.object_map[u] = ho_w.class_of[u];
  f.mor_map.resize(ho_t.category.morphism_count());
  for (MorId fm = 0; fm < ho_t.category.morphism_count(); ++fm) {
    const auto& [sigma, alpha, beta] = ho_t.rep[fm];
    const MorId k = ho_w.class_of_triple(
        {e01.object_map[sigma], d1.mor_map[beta], d1.mor_map[alpha]});
    const MorId h = ho_w.class_of_triple(
        {e23.object_map[sigma], d0.mor_map[alpha], d0.mor_map[beta]});
    const ObjId su = f.object_map[ho_t.category.src(fm)];
    const ObjId tu = f.object_map[ho_t.category.tgt(fm)];
    MorId found = fincat::kNotComposable;
    for (MorId m : twho.category.hom(su, tu))
      if (twho.mor_pair[m] == std::pair<MorId, MorId>{k, h}) {
        found = m;
        break;
      }
    if (found == fincat::kNotComposable)
      throw Error("ho_comparison_functor: no twisted morphism matches a representative");
    f.mor_map[fm] = found;
  }
  if (auto err = fincat::validate_functor(ho_t.category, twho.category, f, true))
    throw ValidationError("ho_comparison_functor: comparison is not a functor: " + *err);
  return HoComparison{std::move(ho_w), std::move(ho_t), std::move(twho), std::move(f)};
}

// ---------------------------------------------------------------------------
// Homotopy equivalences, completeness, and the twisted pullback law

fincat::FullSubcategory hoequiv_subgroupoid(const GroupoidSimplicialSpace& w) {
  return hoequiv_subgroupoid(w, ho_category(w));
}

fincat::FullSubcategory hoequiv_subgroupoid(const GroupoidSimplicialSpace& w,
                                            const HoResult& ho) {
  const auto& g1 = w.level(1);
  std::vector<ObjId> objs;
  std::vector<char> flag(g1.object_count(), 0);
  for (ObjId u = 0; u < g1.object_count(); ++u)
    if (ho.category.is_invertible(ho.class_of[u])) {
      flag[u] = 1;
      objs.push_back(u);
    }
  for (MorId m = 0; m < g1.morphism_count(); ++m)
    if (flag[g1.src(m)] != flag[g1.tgt(m)])
      throw ValidationError(
          "hoequiv_subgroupoid: homotopy equivalences are not closed under edge isomorphism");
  return fincat::full_subcategory(g1, objs);
}

CompletenessReport completeness_check(const GroupoidSimplicialSpace& w) {
  auto ho = ho_category(w);
  auto he = hoequiv_subgroupoid(w, ho);
  const auto& g0 = w.level(0);
  const auto& s0 = w.degen(0, 0);
  FinFunctor f;
  f.object_map.resize(g0.object_count());
  for (ObjId x = 0; x < g0.object_count(); ++x) {
    const auto it = std::lower_bound(he.objects.begin(), he.objects.end(), s0.object_map[x]);
    if (it == he.objects.end() || *it != s0.object_map[x])
      throw Error("completeness_check: a degenerate edge is not a homotopy equivalence");
    f.object_map[x] = static_cast<ObjId>(it - he.objects.begin());
  }
  f.mor_map.resize(g0.morphism_count());
  for (MorId m = 0; m < g0.morphism_count(); ++m) {
    const auto it = std::lower_bound(he.mor_ids.begin(), he.mor_ids.end(), s0.mor_map[m]);
    if (it == he.mor_ids.end() || *it != s0.mor_map[m])
      throw Error("completeness_check: missing image of a level-0 morphism");
    f.mor_map[m] = static_cast<MorId>(it - he.mor_ids.begin());
  }
  CompletenessReport out;
  out.equivalence = fincat::is_equivalence(g0, he.category, f);
  out.complete = out.equivalence.ok();
  std::ostringstream os;
  os << he.objects.size() << " of " << w.level(1).object_count()
     << " edges are homotopy equivalences";
  out.note = os.str();
  return out;
}

PullbackAgreementReport tw_hoequiv_pullback_check(const GroupoidSimplicialSpace& w) {
  auto ho_w = ho_category(w);
  auto he_w = hoequiv_subgroupoid(w, ho_w);
  std::vector<char> is_he(w.level(1).object_count(), 0);
  for (ObjId u : he_w.objects) is_he[u] = 1;
  auto tw = tw_space(w, 3);
  auto ho_t = ho_category(tw);
  auto he_t = hoequiv_subgroupoid(tw, ho_t);
  const auto e01 = w.act(edge_map(3, 0, 1));
  const auto e23 = w.act(edge_map(3, 2, 3));
  std::vector<ObjId> preimage;
  for (ObjId sigma = 0; sigma < w.level(3).object_count(); ++sigma)
    if (is_he[e01.object_map[sigma]] && is_he[e23.object_map[sigma]]) preimage.push_back(sigma);
  PullbackAgreementReport out;
  out.direct_count = he_t.objects.size();
  out.preimage_count = preimage.size();
  out.pass = he_t.objects == preimage;
  if (!out.pass) {
    ObjId bad = 0;
    std::vector<char> in_t(w.level(3).object_count(), 0);
    for (ObjId s : he_t.objects) in_t[s] = 1;
    std::vector<char> in_p(w.level(3).object_count(), 0);
    for (ObjId s : preimage) in_p[s] = 1;
    for (ObjId s = 0; s < w.level(3).object_count(); ++s)
      if (in_t[s] != in_p[s]) {
        bad = s;
        break;
      }
    std::ostringstream os;
    os << "3-simplex " << bad << ": twisted homotopy equivalence=" << (in_t[bad] ? "yes" : "no")
       << ", outer edges homotopy equivalences=" << (in_p[bad] ? "yes" : "no");
    out.witness = os.str();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Left fibrations

LeftFibrationReport left_fibration_check(const GroupoidSimplicialSpace& src,
                                         const GroupoidSimplicialSpace& dst, const SpaceMap& p,
                                         int n_max) {
  if (n_max < 0) throw DimensionError("left_fibration_check: negative degree");
  if (src.trunc() < n_max || dst.trunc() < n_max)
    throw TruncationError("left_fibration_check: degree exceeds truncation");
  if (p.level.size() < static_cast<std::size_t>(n_max) + 1)
    throw DimensionError("left_fibration_check: map has too few levels");
  LeftFibrationReport out;
  out.pass = true;
  const auto& x0 = src.level(0);
  const auto& b0 = dst.level(0);
  const auto& p0 = p.level[0];
  for (int n = 1; n <= n_max; ++n) {
    const auto& xn = src.level(n);
    const auto& bn = dst.level(n);
    const auto& pn = p.level[static_cast<std::size_t>(n)];
    const auto ix = src.act(vertex_map(n, 0));
    const auto ib = dst.act(vertex_map(n, 0));
    const bool all_thin = xn.is_thin() && bn.is_thin() && x0.is_thin() && b0.is_thin();
    bool lazy_ok = true;
    std::string wit;

    // Fullness and faithfulness of the comparison over every object pair.
    for (ObjId x = 0; x < xn.object_count() && lazy_ok; ++x)
      for (ObjId y = 0; y < xn.object_count() && lazy_ok; ++y) {
        if (all_thin) {
          const bool target_nonempty =
              !bn.hom(pn.object_map[x], pn.object_map[y]).empty() &&
              !x0.hom(ix.object_map[x], ix.object_map[y]).empty();
          if (target_nonempty && xn.hom(x, y).empty()) {
            std::ostringstream os;
            os << "fullness fails between objects " << x << " and " << y;
            wit = os.str();
            lazy_ok = false;
          }
          continue;
        }
        std::set<std::pair<MorId, MorId>> image;
        for (MorId m : xn.hom(x, y))
          if (!image.insert({pn.mor_map[m], ix.mor_map[m]}).second) {
            std::ostringstream os;
            os << "faithfulness fails between objects " << x << " and " << y;
            wit = os.str();
            lazy_ok = false;
            break;
          }
        if (!lazy_ok) break;
        for (MorId m : bn.hom(pn.object_map[x], pn.object_map[y])) {
          for (MorId k : x0.hom(ix.object_map[x], ix.object_map[y])) {
            if (p0.mor_map[k] != ib.mor_map[m]) continue;
            if (!image.count({m, k})) {
              std::ostringstream os;
              os << "fullness fails between objects " << x << " and " << y;
              wit = os.str();
              lazy_ok = false;
              break;
            }
          }
          if (!lazy_ok) break;
        }
      }

    // Essential surjectivity.
    if (lazy_ok && all_thin) {
      const auto comp_bn = fincat::component_ids(bn);
      const auto comp_x0 = fincat::component_ids(x0);
      const auto comp_b0 = fincat::component_ids(b0);
      std::set<std::pair<ObjId, ObjId>> achieved;
      for (ObjId x = 0; x < xn.object_count(); ++x)
        achieved.insert({comp_bn[pn.object_map[x]], comp_x0[ix.object_map[x]]});
      std::vector<ObjId> rep_bn, rep_x0;
      {
        std::set<ObjId> seen;
        for (ObjId a = 0; a < bn.object_count(); ++a)
          if (seen.insert(comp_bn[a]).second) rep_bn.push_back(a);
        seen.clear();
        for (ObjId b = 0; b < x0.object_count(); ++b)
          if (seen.insert(comp_x0[b]).second) rep_x0.push_back(b);
      }
      for (ObjId a : rep_bn) {
        for (ObjId b : rep_x0) {
          if (comp_b0[ib.object_map[a]] != comp_b0[p0.object_map[b]]) continue;
          if (!achieved.count({comp_bn[a], comp_x0[b]})) {
            std::ostringstream os;
            os << "essential surjectivity fails: no object covers (" << a << ", " << b << ")";
            wit = os.str();
            lazy_ok = false;
            break;
          }
        }
        if (!lazy_ok) break;
      }
    } else if (lazy_ok) {
      for (ObjId a = 0; a < bn.object_count() && lazy_ok; ++a)
        for (ObjId b = 0; b < x0.object_count() && lazy_ok; ++b)
          for (MorId phi : b0.hom(ib.object_map[a], p0.object_map[b])) {
            bool hit = false;
            for (ObjId x = 0; x < xn.object_count() && !hit; ++x) {
              for (MorId m : bn.hom(pn.object_map[x], a)) {
                const MorId need = b0.compose(phi, ib.mor_map[m]);
                for (MorId k : x0.hom(ix.object_map[x], b))
                  if (p0.mor_map[k] == need) {
                    hit = true;
                    break;
                  }
                if (hit) break;
              }
            }
            if (!hit) {
              std::ostringstream os;
              os << "essential surjectivity fails: no object covers (" << a << ", " << b
                 << ") with connecting morphism " << phi;
              wit = os.str();
              lazy_ok = false;
              break;
            }
          }
    }

    if (n == 1) {
      auto hp = homotopy_pullback_check(xn, bn, x0, b0, pn, ix, ib, p0);
      if (hp.pass != lazy_ok) out.shortcut_agrees = false;
    }
    if (!lazy_ok && out.pass) {
      out.pass = false;
      std::ostringstream os;
      os << "degree " << n << ": " << wit;
      out.witness = os.str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fibers

GroupoidSimplicialSpace fiber_at(const GroupoidSimplicialSpace& total,
                                 const GroupoidSimplicialSpace& base, const SpaceMap& leg,
                                 ObjId x) {
  const int t = total.trunc();
  if (base.trunc() < t) throw TruncationError("fiber_at: base truncated too low");
  if (leg.level.size() < static_cast<std::size_t>(t) + 1)
    throw DimensionError("fiber_at: map has too few levels");
  if (x >= base.level(0).object_count())
    throw DimensionError("fiber_at: base object out of range");

  struct Level {
    std::vector<ObjId> sigma;
    std::vector<MorId> phi;
    std::map<std::pair<ObjId, MorId>, ObjId> object_index;
    std::vector<ObjId> msrc_obj;
    std::vector<MorId> mmor;
    std::map<std::pair<ObjId, MorId>, MorId> morphism_index;
  };
  std::vector<Level> lv(static_cast<std::size_t>(t) + 1);
  std::vector<std::shared_ptr<const FinGroupoid>> levels(static_cast<std::size_t>(t) + 1);

  for (int n = 0; n <= t; ++n) {
    const auto& tn = total.level(n);
    const auto& bn = base.level(n);
    const auto& ln = leg.level[static_cast<std::size_t>(n)];
    const ObjId xn = base.act(collapse_map(n)).object_map[x];
    auto& L = lv[static_cast<std::size_t>(n)];
    for (ObjId s = 0; s < tn.object_count(); ++s)
      for (MorId phi : bn.hom(ln.object_map[s], xn)) {
        L.object_index[{s, phi}] = static_cast<ObjId>(L.sigma.size());
        L.sigma.push_back(s);
        L.phi.push_back(phi);
      }
    const auto t_out = out_edges(tn);
    std::vector<ObjId> src, tgt;
    for (ObjId o = 0; o < L.sigma.size(); ++o)
      for (MorId m : t_out[L.sigma[o]]) {
        const MorId phi2 = bn.compose(L.phi[o], bn.inverse(ln.mor_map[m]));
        L.morphism_index[{o, m}] = static_cast<MorId>(src.size());
        src.push_back(o);
        tgt.push_back(L.object_index.at({tn.tgt(m), phi2}));
        L.msrc_obj.push_back(o);
        L.mmor.push_back(m);
      }
    std::vector<MorId> ids;
    for (ObjId o = 0; o < L.sigma.size(); ++o)
      ids.push_back(L.morphism_index.at({o, tn.identity(L.sigma[o])}));
    auto composite = [&L, &tn](MorId g2, MorId f2) {
      return L.morphism_index.at({L.msrc_obj[f2], tn.compose(L.mmor[g2], L.mmor[f2])});
    };
    levels[static_cast<std::size_t>(n)] = share(FinGroupoid::from_category(
        FinCategory::automatic(static_cast<std::uint32_t>(L.sigma.size()), src, tgt, ids,
                               composite)));
  }

  auto functor_for = [&](const FinFunctor& tf, const FinFunctor& bf, int from, int to) {
    const auto& lf = lv[static_cast<std::size_t>(from)];
    const auto& lt = lv[static_cast<std::size_t>(to)];
    FinFunctor f;
    f.object_map.resize(lf.sigma.size());
    for (ObjId o = 0; o < lf.sigma.size(); ++o)
      f.object_map[o] = lt.object_index.at({tf.object_map[lf.sigma[o]], bf.mor_map[lf.phi[o]]});
    f.mor_map.resize(lf.mmor.size());
    for (MorId m = 0; m < lf.mmor.size(); ++m)
      f.mor_map[m] =
          lt.morphism_index.at({f.object_map[lf.msrc_obj[m]], tf.mor_map[lf.mmor[m]]});
    return f;
  };

  std::vector<std::vector<FinFunctor>> faces(static_cast<std::size_t>(t) + 1);
  std::vector<std::vector<FinFunctor>> degens(static_cast<std::size_t>(t) + 1);
  for (int n = 1; n <= t; ++n)
    for (int i = 0; i <= n; ++i)
      faces[static_cast<std::size_t>(n)].push_back(
          functor_for(total.face(n, i), base.face(n, i), n, n - 1));
  for (int n = 0; n < t; ++n)
    for (int i = 0; i <= n; ++i)
      degens[static_cast<std::size_t>(n)].push_back(
          functor_for(total.degen(n, i), base.degen(n, i), n, n + 1));
  return GroupoidSimplicialSpace(std::move(levels), std::move(faces), std::move(degens));
}

}  // namespace twarrow::gss
