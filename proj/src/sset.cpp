#include "twarrow/sset.hpp"

#include <algorithm>
#include <map>

namespace twarrow::sset {

namespace {

constexpr Cell kNone = 0xffffffffu;

std::string cell_str(int n, Cell c) {
  return "level " + std::to_string(n) + " cell " + std::to_string(c);
}

std::optional<std::string> check_tables(int trunc, const std::vector<std::uint32_t>& counts,
                                        const std::vector<std::vector<std::vector<Cell>>>& faces,
                                        const std::vector<std::vector<std::vector<Cell>>>& degens) {
  if (trunc < 0) return "negative truncation level";
  const std::size_t levels = static_cast<std::size_t>(trunc) + 1;
  if (counts.size() != levels) return "count table has wrong size";
  if (faces.size() != levels || degens.size() != levels) return "face/degeneracy tables have wrong size";
  if (!faces[0].empty()) return "level 0 cells cannot have faces";
  if (!degens[static_cast<std::size_t>(trunc)].empty()) return "degeneracies at the top level leave the truncation";
  for (int n = 1; n <= trunc; ++n) {
    if (faces[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n) + 1)
      return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " face maps";
    for (const auto& col : faces[static_cast<std::size_t>(n)]) {
      if (col.size() != counts[static_cast<std::size_t>(n)]) return "face map at level " + std::to_string(n) + " has wrong size";
      for (Cell v : col)
        if (v >= counts[static_cast<std::size_t>(n) - 1]) return "face value out of range at level " + std::to_string(n);
    }
  }
  for (int n = 0; n < trunc; ++n) {
    if (degens[static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n) + 1)
      return "level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracy maps";
    for (const auto& col : degens[static_cast<std::size_t>(n)]) {
      if (col.size() != counts[static_cast<std::size_t>(n)]) return "degeneracy map at level " + std::to_string(n) + " has wrong size";
      for (Cell v : col)
        if (v >= counts[static_cast<std::size_t>(n) + 1]) return "degeneracy value out of range at level " + std::to_string(n);
    }
  }
  auto d = [&](int n, int i, Cell c) { return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][c]; };
  auto s = [&](int n, int i, Cell c) { return degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][c]; };
  for (int n = 2; n <= trunc; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (Cell c = 0; c < counts[static_cast<std::size_t>(n)]; ++c)
          if (d(n - 1, i, d(n, j, c)) != d(n - 1, j - 1, d(n, i, c)))
            return "face identity d_" + std::to_string(i) + " d_" + std::to_string(j) + " fails on " + cell_str(n, c);
  for (int n = 0; n + 2 <= trunc; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (Cell c = 0; c < counts[static_cast<std::size_t>(n)]; ++c)
          if (s(n + 1, i, s(n, j, c)) != s(n + 1, j + 1, s(n, i, c)))
            return "degeneracy identity s_" + std::to_string(i) + " s_" + std::to_string(j) + " fails on " + cell_str(n, c);
  for (int n = 0; n < trunc; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i)
        for (Cell c = 0; c < counts[static_cast<std::size_t>(n)]; ++c) {
          Cell got = d(n + 1, i, s(n, j, c));
          Cell want;
          if (i == j || i == j + 1) want = c;
          else if (i < j) want = s(n - 1, j - 1, d(n, i, c));
          else want = s(n - 1, j, d(n, i - 1, c));
          if (got != want)
            return "mixed identity d_" + std::to_string(i) + " s_" + std::to_string(j) + " fails on " + cell_str(n, c);
        }
  return std::nullopt;
}

}  // namespace

FinSimplicialSet::FinSimplicialSet(int trunc, std::vector<std::uint32_t> counts,
                                   std::vector<std::vector<std::vector<Cell>>> faces,
                                   std::vector<std::vector<std::vector<Cell>>> degens)
    : trunc_(trunc), counts_(std::move(counts)), faces_(std::move(faces)), degens_(std::move(degens)) {
  if (auto why = check_tables(trunc_, counts_, faces_, degens_))
    throw ValidationError("simplicial set: " + *why);
}

std::uint32_t FinSimplicialSet::count(int n) const {
  if (n < 0 || n > trunc_) throw TruncationError("count: level " + std::to_string(n) + " outside truncation");
  return counts_[static_cast<std::size_t>(n)];
}

Cell FinSimplicialSet::face(int n, int i, Cell c) const {
  if (n < 1 || n > trunc_) throw TruncationError("face: level " + std::to_string(n) + " outside truncation");
  if (i < 0 || i > n) throw DimensionError("face: index " + std::to_string(i) + " outside 0.." + std::to_string(n));
  if (c >= counts_[static_cast<std::size_t>(n)]) throw DimensionError("face: no " + cell_str(n, c));
  return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][c];
}

Cell FinSimplicialSet::degen(int n, int i, Cell c) const {
  if (n < 0 || n >= trunc_) throw TruncationError("degen: level " + std::to_string(n) + " has no degeneracies inside the truncation");
  if (i < 0 || i > n) throw DimensionError("degen: index " + std::to_string(i) + " outside 0.." + std::to_string(n));
  if (c >= counts_[static_cast<std::size_t>(n)]) throw DimensionError("degen: no " + cell_str(n, c));
  return degens_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][c];
}

Cell FinSimplicialSet::act(const delta::SimplexMap& op, Cell c) const {
  if (op.cod() > trunc_ || op.dom() > trunc_)
    throw TruncationError("act: operator " + op.str() + " leaves the truncation");
  if (c >= counts_[static_cast<std::size_t>(op.cod())]) throw DimensionError("act: no " + cell_str(op.cod(), c));
  // contravariant action: the injection's faces apply top-down, then the
  // surjection's degeneracies bottom-up (both words read in composition order)
  auto ez = delta::ez_factorize(op);
  int level = op.cod();
  for (int i : delta::face_word(ez.injection)) {
    c = face(level, i, c);
    --level;
  }
  auto sw = delta::degeneracy_word(ez.surjection);
  for (auto it = sw.rbegin(); it != sw.rend(); ++it) {
    c = degen(level, *it, c);
    ++level;
  }
  return c;
}

bool FinSimplicialSet::is_degenerate(int n, Cell c) const {
  for (int i = 0; i < n; ++i)
    if (degen(n - 1, i, face(n, i, c)) == c) return true;
  return false;
}

std::vector<Cell> FinSimplicialSet::nondegenerate(int n) const {
  std::vector<Cell> out;
  for (Cell c = 0; c < count(n); ++c)
    if (!is_degenerate(n, c)) out.push_back(c);
  return out;
}

std::optional<std::string> FinSimplicialSet::validate() const {
  return check_tables(trunc_, counts_, faces_, degens_);
}

std::optional<std::string> validate_morphism(const FinSimplicialSet& source,
                                             const FinSimplicialSet& target,
                                             const SSetMorphism& f) {
  if (source.trunc() != target.trunc()) return "source and target truncation levels differ";
  if (f.level.size() != static_cast<std::size_t>(source.trunc()) + 1) return "morphism has wrong number of levels";
  for (int n = 0; n <= source.trunc(); ++n) {
    const auto& col = f.level[static_cast<std::size_t>(n)];
    if (col.size() != source.count(n)) return "morphism level " + std::to_string(n) + " has wrong size";
    for (Cell v : col)
      if (v >= target.count(n)) return "morphism value out of range at level " + std::to_string(n);
  }
  for (int n = 1; n <= source.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < source.count(n); ++c)
        if (f.level[static_cast<std::size_t>(n) - 1][source.face(n, i, c)] !=
            target.face(n, i, f.level[static_cast<std::size_t>(n)][c]))
          return "morphism breaks d_" + std::to_string(i) + " on " + cell_str(n, c);
  for (int n = 0; n < source.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < source.count(n); ++c)
        if (f.level[static_cast<std::size_t>(n) + 1][source.degen(n, i, c)] !=
            target.degen(n, i, f.level[static_cast<std::size_t>(n)][c]))
          return "morphism breaks s_" + std::to_string(i) + " on " + cell_str(n, c);
  return std::nullopt;
}

bool is_iso(const FinSimplicialSet& source, const FinSimplicialSet& target,
            const SSetMorphism& f) {
  if (validate_morphism(source, target, f)) return false;
  for (int n = 0; n <= source.trunc(); ++n) {
    if (source.count(n) != target.count(n)) return false;
    std::vector<char> hit(target.count(n), 0);
    for (Cell v : f.level[static_cast<std::size_t>(n)]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

SSetMorphism identity_morphism(const FinSimplicialSet& s) {
  SSetMorphism f;
  f.level.resize(static_cast<std::size_t>(s.trunc()) + 1);
  for (int n = 0; n <= s.trunc(); ++n) {
    f.level[static_cast<std::size_t>(n)].resize(s.count(n));
    for (Cell c = 0; c < s.count(n); ++c) f.level[static_cast<std::size_t>(n)][c] = c;
  }
  return f;
}

SSetMorphism compose_morphisms(const SSetMorphism& f, const SSetMorphism& g) {
  SSetMorphism h;
  h.level.resize(g.level.size());
  for (std::size_t n = 0; n < g.level.size(); ++n) {
    h.level[n].resize(g.level[n].size());
    for (std::size_t c = 0; c < g.level[n].size(); ++c) h.level[n][c] = f.level[n][g.level[n][c]];
  }
  return h;
}

namespace {

// Shared builder for subcomplexes of the standard n-simplex cut out by a
// predicate on maps that is closed under precomposition.
template <typename Keep>
SubSSet standard_subcomplex(int n, int trunc, Keep&& keep) {
  std::vector<std::vector<delta::SimplexMap>> maps;     // selected, per level
  std::vector<std::vector<std::uint32_t>> full_to_sub;  // lex rank -> sub id
  for (int k = 0; k <= trunc; ++k) {
    auto& sel = maps.emplace_back();
    auto& f2s = full_to_sub.emplace_back(delta::count_maps(k, n), kNone);
    std::uint32_t full = 0;
    for (const auto& m : delta::all_maps(k, n)) {
      if (keep(m)) {
        f2s[full] = static_cast<std::uint32_t>(sel.size());
        sel.push_back(m);
      }
      ++full;
    }
  }
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  SSetMorphism inc;
  inc.level.resize(counts.size());
  for (int k = 0; k <= trunc; ++k) {
    counts[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(maps[static_cast<std::size_t>(k)].size());
    for (const auto& m : maps[static_cast<std::size_t>(k)])
      inc.level[static_cast<std::size_t>(k)].push_back(static_cast<Cell>(delta::lex_rank(m)));
  }
  for (int k = 1; k <= trunc; ++k) {
    faces[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
      for (const auto& m : maps[static_cast<std::size_t>(k)]) {
        Cell sub = full_to_sub[static_cast<std::size_t>(k) - 1]
                              [delta::lex_rank(delta::compose(m, delta::face(k, i)))];
        faces[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].push_back(sub);
      }
  }
  for (int k = 0; k < trunc; ++k) {
    degens[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
      for (const auto& m : maps[static_cast<std::size_t>(k)]) {
        Cell sub = full_to_sub[static_cast<std::size_t>(k) + 1]
                              [delta::lex_rank(delta::compose(m, delta::degeneracy(k, i)))];
        degens[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].push_back(sub);
      }
  }
  SubSSet out;
  out.subset = FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
  out.inclusion = std::move(inc);
  return out;
}

}  // namespace

FinSimplicialSet standard_simplex(int n, int trunc) {
  return standard_subcomplex(n, trunc, [](const delta::SimplexMap&) { return true; }).subset;
}

SubSSet boundary(int n, int trunc) {
  return standard_subcomplex(n, trunc, [](const delta::SimplexMap& m) { return !m.is_surjective(); });
}

SubSSet spine(int n, int trunc) {
  return standard_subcomplex(n, trunc, [](const delta::SimplexMap& m) {
    int lo = m(0), hi = m(m.dom());
    return hi - lo <= 1;
  });
}

CoproductSSet coproduct(const std::vector<const FinSimplicialSet*>& parts) {
  if (parts.empty()) throw ValidationError("coproduct: no parts");
  const int trunc = parts[0]->trunc();
  for (const auto* p : parts)
    if (p->trunc() != trunc) throw TruncationError("coproduct: truncation levels differ");
  CoproductSSet out;
  out.inclusions.resize(parts.size());
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1, 0);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    out.inclusions[p].level.resize(counts.size());
    for (int n = 0; n <= trunc; ++n) {
      auto& col = out.inclusions[p].level[static_cast<std::size_t>(n)];
      col.resize(parts[p]->count(n));
      for (Cell c = 0; c < parts[p]->count(n); ++c) col[c] = counts[static_cast<std::size_t>(n)] + c;
      counts[static_cast<std::size_t>(n)] += parts[p]->count(n);
    }
  }
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 1; n <= trunc; ++n) {
    faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (std::size_t p = 0; p < parts.size(); ++p)
        for (Cell c = 0; c < parts[p]->count(n); ++c)
          faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
              out.inclusions[p].level[static_cast<std::size_t>(n) - 1][parts[p]->face(n, i, c)]);
  }
  for (int n = 0; n < trunc; ++n) {
    degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (std::size_t p = 0; p < parts.size(); ++p)
        for (Cell c = 0; c < parts[p]->count(n); ++c)
          degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
              out.inclusions[p].level[static_cast<std::size_t>(n) + 1][parts[p]->degen(n, i, c)]);
  }
  out.sset = FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
  return out;
}

ProductSSet product(const FinSimplicialSet& a, const FinSimplicialSet& b) {
  if (a.trunc() != b.trunc()) throw TruncationError("product: truncation levels differ");
  const int trunc = a.trunc();
  ProductSSet out;
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  out.pr1.level.resize(counts.size());
  out.pr2.level.resize(counts.size());
  for (int n = 0; n <= trunc; ++n) {
    counts[static_cast<std::size_t>(n)] = a.count(n) * b.count(n);
    for (Cell x = 0; x < a.count(n); ++x)
      for (Cell y = 0; y < b.count(n); ++y) {
        out.pr1.level[static_cast<std::size_t>(n)].push_back(x);
        out.pr2.level[static_cast<std::size_t>(n)].push_back(y);
      }
  }
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 1; n <= trunc; ++n) {
    faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (Cell x = 0; x < a.count(n); ++x)
        for (Cell y = 0; y < b.count(n); ++y)
          faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
              a.face(n, i, x) * b.count(n - 1) + b.face(n, i, y));
  }
  for (int n = 0; n < trunc; ++n) {
    degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (Cell x = 0; x < a.count(n); ++x)
        for (Cell y = 0; y < b.count(n); ++y)
          degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
              a.degen(n, i, x) * b.count(n + 1) + b.degen(n, i, y));
  }
  out.sset = FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
  return out;
}

SSetMorphism pair_into_product(const FinSimplicialSet& x, const FinSimplicialSet& a,
                               const FinSimplicialSet& b, const SSetMorphism& f,
                               const SSetMorphism& g) {
  if (auto why = validate_morphism(x, a, f)) throw ValidationError("pair_into_product: first leg: " + *why);
  if (auto why = validate_morphism(x, b, g)) throw ValidationError("pair_into_product: second leg: " + *why);
  SSetMorphism h;
  h.level.resize(static_cast<std::size_t>(x.trunc()) + 1);
  for (int n = 0; n <= x.trunc(); ++n)
    for (Cell c = 0; c < x.count(n); ++c)
      h.level[static_cast<std::size_t>(n)].push_back(
          f.level[static_cast<std::size_t>(n)][c] * b.count(n) + g.level[static_cast<std::size_t>(n)][c]);
  return h;
}

QuotientSSet coequalizer(const FinSimplicialSet& x, const FinSimplicialSet& y,
                         const SSetMorphism& f, const SSetMorphism& g) {
  if (auto why = validate_morphism(x, y, f)) throw ValidationError("coequalizer: first map: " + *why);
  if (auto why = validate_morphism(x, y, g)) throw ValidationError("coequalizer: second map: " + *why);
  const int trunc = y.trunc();
  std::vector<UnionFind> uf;
  for (int n = 0; n <= trunc; ++n) uf.emplace_back(y.count(n));
  for (int n = 0; n <= trunc; ++n)
    for (Cell c = 0; c < x.count(n); ++c)
      uf[static_cast<std::size_t>(n)].unite(f.level[static_cast<std::size_t>(n)][c],
                                            g.level[static_cast<std::size_t>(n)][c]);
  std::vector<UnionFind::Classes> cls;
  for (int n = 0; n <= trunc; ++n) cls.push_back(uf[static_cast<std::size_t>(n)].classes());
  QuotientSSet out;
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  out.projection.level.resize(counts.size());
  for (int n = 0; n <= trunc; ++n) {
    counts[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(cls[static_cast<std::size_t>(n)].representative.size());
    out.projection.level[static_cast<std::size_t>(n)].assign(cls[static_cast<std::size_t>(n)].class_of.begin(),
                                                             cls[static_cast<std::size_t>(n)].class_of.end());
  }
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 1; n <= trunc; ++n) {
    faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (Cell k = 0; k < counts[static_cast<std::size_t>(n)]; ++k) {
        Cell rep = static_cast<Cell>(cls[static_cast<std::size_t>(n)].representative[k]);
        faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
            cls[static_cast<std::size_t>(n) - 1].class_of[y.face(n, i, rep)]);
      }
  }
  for (int n = 0; n < trunc; ++n) {
    degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (Cell k = 0; k < counts[static_cast<std::size_t>(n)]; ++k) {
        Cell rep = static_cast<Cell>(cls[static_cast<std::size_t>(n)].representative[k]);
        degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(
            cls[static_cast<std::size_t>(n) + 1].class_of[y.degen(n, i, rep)]);
      }
  }
  out.sset = FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
  return out;
}

PushoutSSet pushout(const FinSimplicialSet& a, const FinSimplicialSet& b,
                    const FinSimplicialSet& c, const SSetMorphism& f, const SSetMorphism& g) {
  auto bc = coproduct({&b, &c});
  auto q = coequalizer(a, bc.sset, compose_morphisms(bc.inclusions[0], f),
                       compose_morphisms(bc.inclusions[1], g));
  PushoutSSet out;
  out.sset = std::move(q.sset);
  out.from_first = compose_morphisms(q.projection, bc.inclusions[0]);
  out.from_second = compose_morphisms(q.projection, bc.inclusions[1]);
  return out;
}

FinSimplicialSet truncate(const FinSimplicialSet& s, int trunc) {
  if (trunc < 0 || trunc > s.trunc())
    throw TruncationError("truncate: level " + std::to_string(trunc) + " outside 0.." + std::to_string(s.trunc()));
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 0; n <= trunc; ++n) {
    counts[static_cast<std::size_t>(n)] = s.count(n);
    if (n >= 1) {
      faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        for (Cell c = 0; c < s.count(n); ++c)
          faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.face(n, i, c));
    }
    if (n < trunc) {
      degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        for (Cell c = 0; c < s.count(n); ++c)
          degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.degen(n, i, c));
    }
  }
  return FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
}

FinSimplicialSet op_sset(const FinSimplicialSet& s) {
  const int trunc = s.trunc();
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 0; n <= trunc; ++n) {
    counts[static_cast<std::size_t>(n)] = s.count(n);
    if (n >= 1) {
      faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        for (Cell c = 0; c < s.count(n); ++c)
          faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.face(n, n - i, c));
    }
    if (n < trunc) {
      degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        for (Cell c = 0; c < s.count(n); ++c)
          degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.degen(n, n - i, c));
    }
  }
  return FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
}

Cell Nerve::rank(int n, const std::vector<fincat::MorId>& chain) const {
  const auto& level = chains[static_cast<std::size_t>(n)];
  auto it = std::lower_bound(level.begin(), level.end(), chain);
  if (it == level.end() || *it != chain) throw ValidationError("nerve: chain not present at level " + std::to_string(n));
  return static_cast<Cell>(it - level.begin());
}

Nerve nerve(const fincat::FinCategory& c, int trunc) {
  Nerve out;
  out.chains.resize(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) out.chains[static_cast<std::size_t>(n)] = fincat::composable_chains(c, n);
  auto vertex = [&](const std::vector<fincat::MorId>& chain, Cell id0, int i) -> fincat::ObjId {
    // vertex i of a chain; id0 stands in for the object of an empty chain
    if (chain.empty()) return id0;
    return i == 0 ? c.src(chain[0]) : c.tgt(chain[static_cast<std::size_t>(i) - 1]);
  };
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n)
    counts[static_cast<std::size_t>(n)] = static_cast<std::uint32_t>(out.chains[static_cast<std::size_t>(n)].size());
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 1; n <= trunc; ++n) {
    faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (const auto& chain : out.chains[static_cast<std::size_t>(n)]) {
        if (n == 1) {
          faces[1][static_cast<std::size_t>(i)].push_back(i == 0 ? c.tgt(chain[0]) : c.src(chain[0]));
          continue;
        }
        std::vector<fincat::MorId> sub;
        if (i == 0) {
          sub.assign(chain.begin() + 1, chain.end());
        } else if (i == n) {
          sub.assign(chain.begin(), chain.end() - 1);
        } else {
          sub = chain;
          sub[static_cast<std::size_t>(i) - 1] = c.compose(chain[static_cast<std::size_t>(i)],
                                                           chain[static_cast<std::size_t>(i) - 1]);
          sub.erase(sub.begin() + i);
        }
        faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(out.rank(n - 1, sub));
      }
  }
  for (int n = 0; n < trunc; ++n) {
    degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      for (Cell id = 0; id < counts[static_cast<std::size_t>(n)]; ++id) {
        const auto& chain = out.chains[static_cast<std::size_t>(n)][id];
        std::vector<fincat::MorId> sub = chain;
        sub.insert(sub.begin() + i, c.identity(vertex(chain, id, i)));
        degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(out.rank(n + 1, sub));
      }
  }
  out.sset = FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
  return out;
}

SSetMorphism nerve_map(const Nerve& source, const Nerve& target, const fincat::FinFunctor& f) {
  if (source.sset.trunc() != target.sset.trunc()) throw TruncationError("nerve_map: truncation levels differ");
  SSetMorphism out;
  out.level.resize(static_cast<std::size_t>(source.sset.trunc()) + 1);
  out.level[0].assign(f.object_map.begin(), f.object_map.end());
  for (int n = 1; n <= source.sset.trunc(); ++n)
    for (const auto& chain : source.chains[static_cast<std::size_t>(n)]) {
      std::vector<fincat::MorId> image(chain.size());
      for (std::size_t i = 0; i < chain.size(); ++i) image[i] = f.mor_map[chain[i]];
      out.level[static_cast<std::size_t>(n)].push_back(target.rank(n, image));
    }
  return out;
}

FinSimplicialSet tw_sset(const FinSimplicialSet& s, int trunc) {
  if (trunc < 0) throw TruncationError("tw_sset: negative truncation level");
  if (s.trunc() < 2 * trunc + 1)
    throw TruncationError("tw_sset: need the input up to level " + std::to_string(2 * trunc + 1) +
                          ", have " + std::to_string(s.trunc()));
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) counts[static_cast<std::size_t>(n)] = s.count(2 * n + 1);
  std::vector<std::vector<std::vector<Cell>>> faces(counts.size()), degens(counts.size());
  for (int n = 1; n <= trunc; ++n) {
    faces[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto op = delta::q_map(delta::face(n, i));
      for (Cell c = 0; c < counts[static_cast<std::size_t>(n)]; ++c)
        faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.act(op, c));
    }
  }
  for (int n = 0; n < trunc; ++n) {
    degens[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
      auto op = delta::q_map(delta::degeneracy(n, i));
      for (Cell c = 0; c < counts[static_cast<std::size_t>(n)]; ++c)
        degens[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)].push_back(s.act(op, c));
    }
  }
  return FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
}

TwProjections tw_projections(const FinSimplicialSet& s, int trunc) {
  TwProjections out;
  out.tw = tw_sset(s, trunc);
  out.base = truncate(s, trunc);
  out.op_base = op_sset(out.base);
  out.to_op_base.level.resize(static_cast<std::size_t>(trunc) + 1);
  out.to_base.level.resize(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    auto left = delta::block_inclusion_left(n);
    auto right = delta::block_inclusion_right(n);
    for (Cell c = 0; c < out.tw.count(n); ++c) {
      out.to_op_base.level[static_cast<std::size_t>(n)].push_back(s.act(left, c));
      out.to_base.level[static_cast<std::size_t>(n)].push_back(s.act(right, c));
    }
  }
  return out;
}

namespace {

// Backtracking isomorphism search. Non-degenerate cells are assigned level by
// level; candidates must carry the same already-mapped face tuple (and the
// same base cell when searching over a base). Degenerate cells are forced
// from below, then every presentation of them is cross-checked, so a
// successful search returns a genuine simplicial isomorphism.
class IsoSearch {
 public:
  IsoSearch(const FinSimplicialSet& a, const FinSimplicialSet& b, const SSetMorphism* pa,
            const SSetMorphism* pb, std::uint64_t budget)
      : a_(a), b_(b), pa_(pa), pb_(pb), budget_(budget) {}

  std::optional<SSetMorphism> run() {
    if (a_.trunc() != b_.trunc()) throw DimensionError("find_iso: truncation levels differ");
    const int trunc = a_.trunc();
    for (int n = 0; n <= trunc; ++n)
      if (a_.count(n) != b_.count(n)) return std::nullopt;
    map_.resize(static_cast<std::size_t>(trunc) + 1);
    used_.resize(static_cast<std::size_t>(trunc) + 1);
    slots_.resize(static_cast<std::size_t>(trunc) + 1);
    index_.resize(static_cast<std::size_t>(trunc) + 1);
    for (int n = 0; n <= trunc; ++n) {
      map_[static_cast<std::size_t>(n)].assign(a_.count(n), kNone);
      used_[static_cast<std::size_t>(n)].assign(b_.count(n), 0);
      slots_[static_cast<std::size_t>(n)] = a_.nondegenerate(n);
      auto b_nondeg = b_.nondegenerate(n);
      if (slots_[static_cast<std::size_t>(n)].size() != b_nondeg.size()) return std::nullopt;
      for (Cell d : b_nondeg) index_[static_cast<std::size_t>(n)][b_key(n, d)].push_back(d);
    }
    if (!solve(0, 0)) return std::nullopt;
    SSetMorphism f;
    f.level = map_;
    return f;
  }

 private:
  std::vector<Cell> a_key(int n, Cell c) const {
    std::vector<Cell> key;
    for (int i = 0; i <= n && n > 0; ++i) key.push_back(map_[static_cast<std::size_t>(n) - 1][a_.face(n, i, c)]);
    if (pa_) key.push_back(pa_->level[static_cast<std::size_t>(n)][c]);
    return key;
  }

  std::vector<Cell> b_key(int n, Cell d) const {
    std::vector<Cell> key;
    for (int i = 0; i <= n && n > 0; ++i) key.push_back(b_.face(n, i, d));
    if (pb_) key.push_back(pb_->level[static_cast<std::size_t>(n)][d]);
    return key;
  }

  // Forced images for the degenerate cells of a level; returns the cells
  // assigned here so the caller can roll them back, or nullopt on clash.
  std::optional<std::vector<Cell>> close_level(int n) {
    std::vector<Cell> assigned;
    auto undo = [&]() {
      for (Cell c : assigned) {
        used_[static_cast<std::size_t>(n)][map_[static_cast<std::size_t>(n)][c]] = 0;
        map_[static_cast<std::size_t>(n)][c] = kNone;
      }
    };
    for (Cell c = 0; c < a_.count(n); ++c) {
      if (map_[static_cast<std::size_t>(n)][c] != kNone) continue;
      Cell image = kNone;
      for (int i = 0; i < n && image == kNone; ++i) {
        Cell below = a_.face(n, i, c);
        if (a_.degen(n - 1, i, below) == c)
          image = b_.degen(n - 1, i, map_[static_cast<std::size_t>(n) - 1][below]);
      }
      if (image == kNone || used_[static_cast<std::size_t>(n)][image]) {
        undo();
        return std::nullopt;
      }
      map_[static_cast<std::size_t>(n)][c] = image;
      used_[static_cast<std::size_t>(n)][image] = 1;
      assigned.push_back(c);
    }
    // cross-check every face and degeneracy presentation on the whole level
    for (Cell c = 0; c < a_.count(n) && n > 0; ++c) {
      Cell image = map_[static_cast<std::size_t>(n)][c];
      for (int i = 0; i <= n; ++i)
        if (b_.face(n, i, image) != map_[static_cast<std::size_t>(n) - 1][a_.face(n, i, c)]) {
          undo();
          return std::nullopt;
        }
      for (int i = 0; i < n; ++i) {
        Cell below = a_.face(n, i, c);
        if (a_.degen(n - 1, i, below) == c &&
            b_.degen(n - 1, i, map_[static_cast<std::size_t>(n) - 1][below]) != image) {
          undo();
          return std::nullopt;
        }
      }
    }
    return assigned;
  }

  bool solve(int n, std::size_t pos) {
    if (n > a_.trunc()) return true;
    auto& slots = slots_[static_cast<std::size_t>(n)];
    if (pos == slots.size()) {
      auto closed = close_level(n);
      if (!closed) return false;
      if (solve(n + 1, 0)) return true;
      for (Cell c : *closed) {
        used_[static_cast<std::size_t>(n)][map_[static_cast<std::size_t>(n)][c]] = 0;
        map_[static_cast<std::size_t>(n)][c] = kNone;
      }
      return false;
    }
    Cell c = slots[pos];
    auto it = index_[static_cast<std::size_t>(n)].find(a_key(n, c));
    if (it == index_[static_cast<std::size_t>(n)].end()) return false;
    for (Cell d : it->second) {
      if (used_[static_cast<std::size_t>(n)][d]) continue;
      if (++nodes_ > budget_) throw Error("find_iso: node budget exceeded before the search was decided");
      map_[static_cast<std::size_t>(n)][c] = d;
      used_[static_cast<std::size_t>(n)][d] = 1;
      if (solve(n, pos + 1)) return true;
      map_[static_cast<std::size_t>(n)][c] = kNone;
      used_[static_cast<std::size_t>(n)][d] = 0;
    }
    return false;
  }

  const FinSimplicialSet& a_;
  const FinSimplicialSet& b_;
  const SSetMorphism* pa_;
  const SSetMorphism* pb_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Cell>> map_;
  std::vector<std::vector<char>> used_;
  std::vector<std::vector<Cell>> slots_;
  std::vector<std::map<std::vector<Cell>, std::vector<Cell>>> index_;
};

}  // namespace

std::optional<SSetMorphism> find_iso(const FinSimplicialSet& a, const FinSimplicialSet& b,
                                     std::uint64_t node_budget) {
  return IsoSearch(a, b, nullptr, nullptr, node_budget).run();
}

std::optional<SSetMorphism> find_iso_over(const FinSimplicialSet& a, const FinSimplicialSet& b,
                                          const SSetMorphism& pa, const SSetMorphism& pb,
                                          std::uint64_t node_budget) {
  return IsoSearch(a, b, &pa, &pb, node_budget).run();
}

}  // namespace twarrow::sset
