#include "twarrow/bisset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "twarrow/common.hpp"

namespace twarrow::bisset {

namespace {

std::string level_str(int n, int l) {
  return "(" + std::to_string(n) + "," + std::to_string(l) + ")";
}

// Shape check for one of the four table families. All four are indexed
// [n][l][i][cell]; the border rows without maps (faces from degree 0,
// degeneracies from the truncation) must be left empty.
void check_tables(const std::vector<std::vector<std::vector<std::vector<Cell>>>>& t,
                  const char* what, bool n_direction, int trunc_n, int trunc_l,
                  const std::vector<std::vector<std::uint32_t>>& counts, bool is_face) {
  if (static_cast<int>(t.size()) != trunc_n + 1)
    throw ValidationError(std::string(what) + ": one row per categorical degree expected");
  for (int n = 0; n <= trunc_n; ++n) {
    const auto& tn = t[static_cast<std::size_t>(n)];
    if (n_direction) {
      const bool active = is_face ? (n >= 1) : (n < trunc_n);
      if (!active) {
        if (!tn.empty())
          throw ValidationError(std::string(what) + ": border row must be empty");
        continue;
      }
    }
    if (static_cast<int>(tn.size()) != trunc_l + 1)
      throw ValidationError(std::string(what) + ": one entry per spatial degree expected");
    for (int l = 0; l <= trunc_l; ++l) {
      const auto& row = tn[static_cast<std::size_t>(l)];
      int arity, dn = n, dl = l;
      if (n_direction) {
        arity = n + 1;
        dn = is_face ? n - 1 : n + 1;
      } else {
        const bool active = is_face ? (l >= 1) : (l < trunc_l);
        if (!active) {
          if (!row.empty())
            throw ValidationError(std::string(what) + ": border row must be empty");
          continue;
        }
        arity = l + 1;
        dl = is_face ? l - 1 : l + 1;
      }
      if (static_cast<int>(row.size()) != arity)
        throw ValidationError(std::string(what) + ": wrong operator count at level " +
                              level_str(n, l));
      for (const auto& table : row) {
        if (table.size() != counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)])
          throw ValidationError(std::string(what) + ": wrong table size at level " +
                                level_str(n, l));
        for (Cell v : table)
          if (v >= counts[static_cast<std::size_t>(dn)][static_cast<std::size_t>(dl)])
            throw ValidationError(std::string(what) + ": image out of range at level " +
                                  level_str(n, l));
      }
    }
  }
}

}  // namespace

FinBiSimplicialSet::FinBiSimplicialSet(
    int trunc_n, int trunc_l, std::vector<std::vector<std::uint32_t>> counts,
    std::vector<std::vector<std::vector<std::vector<Cell>>>> faces_n,
    std::vector<std::vector<std::vector<std::vector<Cell>>>> degens_n,
    std::vector<std::vector<std::vector<std::vector<Cell>>>> faces_l,
    std::vector<std::vector<std::vector<std::vector<Cell>>>> degens_l)
    : trunc_n_(trunc_n),
      trunc_l_(trunc_l),
      counts_(std::move(counts)),
      faces_n_(std::move(faces_n)),
      degens_n_(std::move(degens_n)),
      faces_l_(std::move(faces_l)),
      degens_l_(std::move(degens_l)) {
  if (trunc_n_ < 0 || trunc_l_ < 0)
    throw TruncationError("bisimplicial set: negative truncation");
  if (static_cast<int>(counts_.size()) != trunc_n_ + 1)
    throw ValidationError("bisimplicial set: one count row per categorical degree expected");
  for (const auto& row : counts_)
    if (static_cast<int>(row.size()) != trunc_l_ + 1)
      throw ValidationError("bisimplicial set: one count per spatial degree expected");
  check_tables(faces_n_, "categorical faces", true, trunc_n_, trunc_l_, counts_, true);
  check_tables(degens_n_, "categorical degeneracies", true, trunc_n_, trunc_l_, counts_, false);
  check_tables(faces_l_, "spatial faces", false, trunc_n_, trunc_l_, counts_, true);
  check_tables(degens_l_, "spatial degeneracies", false, trunc_n_, trunc_l_, counts_, false);
}

std::uint32_t FinBiSimplicialSet::count(int n, int l) const {
  if (n < 0 || n > trunc_n_ || l < 0 || l > trunc_l_)
    throw TruncationError("count: level " + level_str(n, l) + " out of range");
  return counts_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)];
}

Cell FinBiSimplicialSet::face_n(int n, int l, int i, Cell c) const {
  if (n < 1 || n > trunc_n_ || l < 0 || l > trunc_l_ || i < 0 || i > n)
    throw DimensionError("face_n: no face " + std::to_string(i) + " at " + level_str(n, l));
  return faces_n_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)]
                 [static_cast<std::size_t>(i)][c];
}

Cell FinBiSimplicialSet::degen_n(int n, int l, int i, Cell c) const {
  if (n < 0 || n >= trunc_n_ || l < 0 || l > trunc_l_ || i < 0 || i > n)
    throw DimensionError("degen_n: no degeneracy " + std::to_string(i) + " at " +
                         level_str(n, l));
  return degens_n_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)]
                  [static_cast<std::size_t>(i)][c];
}

Cell FinBiSimplicialSet::face_l(int n, int l, int i, Cell c) const {
  if (n < 0 || n > trunc_n_ || l < 1 || l > trunc_l_ || i < 0 || i > l)
    throw DimensionError("face_l: no face " + std::to_string(i) + " at " + level_str(n, l));
  return faces_l_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)]
                 [static_cast<std::size_t>(i)][c];
}

Cell FinBiSimplicialSet::degen_l(int n, int l, int i, Cell c) const {
  if (n < 0 || n > trunc_n_ || l < 0 || l >= trunc_l_ || i < 0 || i > l)
    throw DimensionError("degen_l: no degeneracy " + std::to_string(i) + " at " +
                         level_str(n, l));
  return degens_l_[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)]
                  [static_cast<std::size_t>(i)][c];
}

Cell FinBiSimplicialSet::act(const delta::SimplexMap& op_n, const delta::SimplexMap& op_l,
                             Cell c) const {
  if (op_n.cod() > trunc_n_ || op_n.dom() > trunc_n_ || op_l.cod() > trunc_l_ ||
      op_l.dom() > trunc_l_)
    throw TruncationError("act: operator pair leaves the truncation");
  if (c >= count(op_n.cod(), op_l.cod()))
    throw DimensionError("act: no cell " + std::to_string(c) + " at " +
                         level_str(op_n.cod(), op_l.cod()));
  // categorical direction first, spatial second; the commutation invariant
  // makes the order immaterial
  const int l = op_l.cod();
  auto ezn = delta::ez_factorize(op_n);
  int level = op_n.cod();
  for (int i : delta::face_word(ezn.injection)) {
    c = face_n(level, l, i, c);
    --level;
  }
  auto swn = delta::degeneracy_word(ezn.surjection);
  for (auto it = swn.rbegin(); it != swn.rend(); ++it) {
    c = degen_n(level, l, *it, c);
    ++level;
  }
  const int n = op_n.dom();
  auto ezl = delta::ez_factorize(op_l);
  level = op_l.cod();
  for (int i : delta::face_word(ezl.injection)) {
    c = face_l(n, level, i, c);
    --level;
  }
  auto swl = delta::degeneracy_word(ezl.surjection);
  for (auto it = swl.rbegin(); it != swl.rend(); ++it) {
    c = degen_l(n, level, *it, c);
    ++level;
  }
  return c;
}

std::optional<std::string> FinBiSimplicialSet::validate() const {
  // simplicial identities in the categorical direction, at every spatial degree
  for (int l = 0; l <= trunc_l_; ++l)
    for (int n = 0; n <= trunc_n_; ++n)
      for (Cell c = 0; c < count(n, l); ++c) {
        for (int j = 0; n >= 2 && j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (face_n(n - 1, l, i, face_n(n, l, j, c)) !=
                face_n(n - 1, l, j - 1, face_n(n, l, i, c)))
              return "categorical face identity (" + std::to_string(i) + "," +
                     std::to_string(j) + ") fails at " + level_str(n, l);
        for (int j = 0; n + 2 <= trunc_n_ && j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            if (degen_n(n + 1, l, i, degen_n(n, l, j, c)) !=
                degen_n(n + 1, l, j + 1, degen_n(n, l, i, c)))
              return "categorical degeneracy identity (" + std::to_string(i) + "," +
                     std::to_string(j) + ") fails at " + level_str(n, l);
        for (int j = 0; n < trunc_n_ && j <= n; ++j)
          for (int i = 0; i <= n + 1; ++i) {
            const Cell got = face_n(n + 1, l, i, degen_n(n, l, j, c));
            Cell want;
            if (i < j)
              want = degen_n(n - 1, l, j - 1, face_n(n, l, i, c));
            else if (i == j || i == j + 1)
              want = c;
            else
              want = degen_n(n - 1, l, j, face_n(n, l, i - 1, c));
            if (got != want)
              return "categorical mixed identity (" + std::to_string(i) + "," +
                     std::to_string(j) + ") fails at " + level_str(n, l);
          }
      }
  // same identities in the spatial direction
  for (int n = 0; n <= trunc_n_; ++n)
    for (int l = 0; l <= trunc_l_; ++l)
      for (Cell c = 0; c < count(n, l); ++c) {
        for (int j = 0; l >= 2 && j <= l; ++j)
          for (int i = 0; i < j; ++i)
            if (face_l(n, l - 1, i, face_l(n, l, j, c)) !=
                face_l(n, l - 1, j - 1, face_l(n, l, i, c)))
              return "spatial face identity (" + std::to_string(i) + "," + std::to_string(j) +
                     ") fails at " + level_str(n, l);
        for (int j = 0; l + 2 <= trunc_l_ && j <= l; ++j)
          for (int i = 0; i <= j; ++i)
            if (degen_l(n, l + 1, i, degen_l(n, l, j, c)) !=
                degen_l(n, l + 1, j + 1, degen_l(n, l, i, c)))
              return "spatial degeneracy identity (" + std::to_string(i) + "," +
                     std::to_string(j) + ") fails at " + level_str(n, l);
        for (int j = 0; l < trunc_l_ && j <= l; ++j)
          for (int i = 0; i <= l + 1; ++i) {
            const Cell got = face_l(n, l + 1, i, degen_l(n, l, j, c));
            Cell want;
            if (i < j)
              want = degen_l(n, l - 1, j - 1, face_l(n, l, i, c));
            else if (i == j || i == j + 1)
              want = c;
            else
              want = degen_l(n, l - 1, j, face_l(n, l, i - 1, c));
            if (got != want)
              return "spatial mixed identity (" + std::to_string(i) + "," + std::to_string(j) +
                     ") fails at " + level_str(n, l);
          }
      }
  // the two directions commute
  for (int n = 0; n <= trunc_n_; ++n)
    for (int l = 0; l <= trunc_l_; ++l)
      for (Cell c = 0; c < count(n, l); ++c) {
        for (int i = 0; n >= 1 && i <= n; ++i) {
          for (int j = 0; l >= 1 && j <= l; ++j)
            if (face_l(n - 1, l, j, face_n(n, l, i, c)) !=
                face_n(n, l - 1, i, face_l(n, l, j, c)))
              return "face/face commutation fails at " + level_str(n, l);
          for (int j = 0; l < trunc_l_ && j <= l; ++j)
            if (degen_l(n - 1, l, j, face_n(n, l, i, c)) !=
                face_n(n, l + 1, i, degen_l(n, l, j, c)))
              return "face/degeneracy commutation fails at " + level_str(n, l);
        }
        for (int i = 0; n < trunc_n_ && i <= n; ++i) {
          for (int j = 0; l >= 1 && j <= l; ++j)
            if (face_l(n + 1, l, j, degen_n(n, l, i, c)) !=
                degen_n(n, l - 1, i, face_l(n, l, j, c)))
              return "degeneracy/face commutation fails at " + level_str(n, l);
          for (int j = 0; l < trunc_l_ && j <= l; ++j)
            if (degen_l(n + 1, l, j, degen_n(n, l, i, c)) !=
                degen_n(n, l + 1, i, degen_l(n, l, j, c)))
              return "degeneracy/degeneracy commutation fails at " + level_str(n, l);
        }
      }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

using Tables = std::vector<std::vector<std::vector<std::vector<Cell>>>>;

Tables empty_tables(int trunc_n) { return Tables(static_cast<std::size_t>(trunc_n) + 1); }

std::uint32_t checked_count(std::uint64_t v) {
  if (v > 0xffffffffull) throw ValidationError("bisimplicial set: level too large");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

FinBiSimplicialSet representable(int n, int l, int trunc_n, int trunc_l) {
  if (n < 0 || l < 0) throw DimensionError("representable: negative degree");
  std::vector<std::vector<delta::SimplexMap>> mn, ml;
  for (int k = 0; k <= trunc_n; ++k) mn.push_back(delta::all_maps(k, n));
  for (int j = 0; j <= trunc_l; ++j) ml.push_back(delta::all_maps(j, l));

  std::vector<std::vector<std::uint32_t>> counts(static_cast<std::size_t>(trunc_n) + 1);
  for (int k = 0; k <= trunc_n; ++k)
    for (int j = 0; j <= trunc_l; ++j)
      counts[static_cast<std::size_t>(k)].push_back(checked_count(
          static_cast<std::uint64_t>(mn[static_cast<std::size_t>(k)].size()) *
          ml[static_cast<std::size_t>(j)].size()));

  Tables fn = empty_tables(trunc_n), dn = empty_tables(trunc_n);
  Tables fl = empty_tables(trunc_n), dl = empty_tables(trunc_n);
  // per-level rank tables for the generator actions in each direction
  auto table_n = [&](int k, const delta::SimplexMap& gen) {
    std::vector<Cell> ranks(mn[static_cast<std::size_t>(k)].size());
    for (std::size_t a = 0; a < ranks.size(); ++a)
      ranks[a] = static_cast<Cell>(
          delta::lex_rank(delta::compose(mn[static_cast<std::size_t>(k)][a], gen)));
    return ranks;
  };
  auto table_l = [&](int j, const delta::SimplexMap& gen) {
    std::vector<Cell> ranks(ml[static_cast<std::size_t>(j)].size());
    for (std::size_t b = 0; b < ranks.size(); ++b)
      ranks[b] = static_cast<Cell>(
          delta::lex_rank(delta::compose(ml[static_cast<std::size_t>(j)][b], gen)));
    return ranks;
  };
  // target_cl: spatial-factor size at the target level (differs from the
  // source one exactly when the operator moves in the spatial direction)
  auto expand = [&](const std::vector<Cell>& ranks, bool first, int k, int j,
                    std::size_t target_cl) {
    const std::size_t cl = ml[static_cast<std::size_t>(j)].size();
    const std::size_t ck = mn[static_cast<std::size_t>(k)].size();
    std::vector<Cell> t(ck * cl);
    for (std::size_t a = 0; a < ck; ++a)
      for (std::size_t b = 0; b < cl; ++b)
        t[a * cl + b] = first ? static_cast<Cell>(ranks[a] * cl + b)
                              : static_cast<Cell>(a * target_cl + ranks[b]);
    return t;
  };
  for (int k = 1; k <= trunc_n; ++k) {
    fn[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= k; ++i) {
      auto ranks = table_n(k, delta::face(k, i));
      for (int j = 0; j <= trunc_l; ++j)
        fn[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].push_back(
            expand(ranks, true, k, j, 0));
    }
  }
  for (int k = 0; k < trunc_n; ++k) {
    dn[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= k; ++i) {
      auto ranks = table_n(k, delta::degeneracy(k, i));
      for (int j = 0; j <= trunc_l; ++j)
        dn[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].push_back(
            expand(ranks, true, k, j, 0));
    }
  }
  for (int k = 0; k <= trunc_n; ++k) {
    auto& flk = fl[static_cast<std::size_t>(k)];
    auto& dlk = dl[static_cast<std::size_t>(k)];
    flk.resize(static_cast<std::size_t>(trunc_l) + 1);
    dlk.resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int j = 1; j <= trunc_l; ++j)
      for (int i = 0; i <= j; ++i)
        flk[static_cast<std::size_t>(j)].push_back(
            expand(table_l(j, delta::face(j, i)), false, k, j,
                   ml[static_cast<std::size_t>(j) - 1].size()));
    for (int j = 0; j < trunc_l; ++j)
      for (int i = 0; i <= j; ++i)
        dlk[static_cast<std::size_t>(j)].push_back(
            expand(table_l(j, delta::degeneracy(j, i)), false, k, j,
                   ml[static_cast<std::size_t>(j) + 1].size()));
  }
  return FinBiSimplicialSet(trunc_n, trunc_l, std::move(counts), std::move(fn), std::move(dn),
                            std::move(fl), std::move(dl));
}

FinBiSimplicialSet empty_bisset(int trunc_n, int trunc_l) {
  std::vector<std::vector<std::uint32_t>> counts(
      static_cast<std::size_t>(trunc_n) + 1,
      std::vector<std::uint32_t>(static_cast<std::size_t>(trunc_l) + 1, 0));
  Tables fn = empty_tables(trunc_n), dn = empty_tables(trunc_n);
  Tables fl = empty_tables(trunc_n), dl = empty_tables(trunc_n);
  for (int n = 1; n <= trunc_n; ++n)
    fn[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(trunc_l) + 1,
                                           std::vector<std::vector<Cell>>(
                                               static_cast<std::size_t>(n) + 1));
  for (int n = 0; n < trunc_n; ++n)
    dn[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(trunc_l) + 1,
                                           std::vector<std::vector<Cell>>(
                                               static_cast<std::size_t>(n) + 1));
  for (int n = 0; n <= trunc_n; ++n) {
    auto& flk = fl[static_cast<std::size_t>(n)];
    auto& dlk = dl[static_cast<std::size_t>(n)];
    flk.resize(static_cast<std::size_t>(trunc_l) + 1);
    dlk.resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int l = 1; l <= trunc_l; ++l)
      flk[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(l) + 1);
    for (int l = 0; l < trunc_l; ++l)
      dlk[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(l) + 1);
  }
  return FinBiSimplicialSet(trunc_n, trunc_l, std::move(counts), std::move(fn), std::move(dn),
                            std::move(fl), std::move(dl));
}

FinBiSimplicialSet discrete_embedding(const sset::FinSimplicialSet& s, int trunc_l) {
  const int tn = s.trunc();
  std::vector<std::vector<std::uint32_t>> counts(static_cast<std::size_t>(tn) + 1);
  for (int n = 0; n <= tn; ++n)
    counts[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(trunc_l) + 1,
                                               s.count(n));
  auto identity_table = [&](int n) {
    std::vector<Cell> t(s.count(n));
    for (Cell c = 0; c < s.count(n); ++c) t[c] = c;
    return t;
  };
  auto action_table = [&](int n, const delta::SimplexMap& op) {
    std::vector<Cell> t(s.count(n));
    for (Cell c = 0; c < s.count(n); ++c) t[c] = s.act(op, c);
    return t;
  };
  Tables fn = empty_tables(tn), dn = empty_tables(tn);
  Tables fl = empty_tables(tn), dl = empty_tables(tn);
  for (int n = 1; n <= tn; ++n) {
    fn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= n; ++i) {
      auto t = action_table(n, delta::face(n, i));
      for (int l = 0; l <= trunc_l; ++l)
        fn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(t);
    }
  }
  for (int n = 0; n < tn; ++n) {
    dn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= n; ++i) {
      auto t = action_table(n, delta::degeneracy(n, i));
      for (int l = 0; l <= trunc_l; ++l)
        dn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(t);
    }
  }
  for (int n = 0; n <= tn; ++n) {
    auto& flk = fl[static_cast<std::size_t>(n)];
    auto& dlk = dl[static_cast<std::size_t>(n)];
    flk.resize(static_cast<std::size_t>(trunc_l) + 1);
    dlk.resize(static_cast<std::size_t>(trunc_l) + 1);
    const auto id = identity_table(n);
    for (int l = 1; l <= trunc_l; ++l)
      flk[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(l) + 1, id);
    for (int l = 0; l < trunc_l; ++l)
      dlk[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(l) + 1, id);
  }
  return FinBiSimplicialSet(tn, trunc_l, std::move(counts), std::move(fn), std::move(dn),
                            std::move(fl), std::move(dl));
}

FinBiSimplicialSet constant_space(const sset::FinSimplicialSet& s, int trunc_n) {
  const int tl = s.trunc();
  std::vector<std::vector<std::uint32_t>> counts(static_cast<std::size_t>(trunc_n) + 1);
  for (int n = 0; n <= trunc_n; ++n)
    for (int l = 0; l <= tl; ++l)
      counts[static_cast<std::size_t>(n)].push_back(s.count(l));
  auto identity_table = [&](int l) {
    std::vector<Cell> t(s.count(l));
    for (Cell c = 0; c < s.count(l); ++c) t[c] = c;
    return t;
  };
  Tables fn = empty_tables(trunc_n), dn = empty_tables(trunc_n);
  Tables fl = empty_tables(trunc_n), dl = empty_tables(trunc_n);
  for (int n = 1; n <= trunc_n; ++n) {
    fn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(tl) + 1);
    for (int i = 0; i <= n; ++i)
      for (int l = 0; l <= tl; ++l)
        fn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(
            identity_table(l));
  }
  for (int n = 0; n < trunc_n; ++n) {
    dn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(tl) + 1);
    for (int i = 0; i <= n; ++i)
      for (int l = 0; l <= tl; ++l)
        dn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(
            identity_table(l));
  }
  for (int n = 0; n <= trunc_n; ++n) {
    auto& flk = fl[static_cast<std::size_t>(n)];
    auto& dlk = dl[static_cast<std::size_t>(n)];
    flk.resize(static_cast<std::size_t>(tl) + 1);
    dlk.resize(static_cast<std::size_t>(tl) + 1);
    for (int l = 1; l <= tl; ++l)
      for (int i = 0; i <= l; ++i) {
        std::vector<Cell> t(s.count(l));
        for (Cell c = 0; c < s.count(l); ++c) t[c] = s.face(l, i, c);
        flk[static_cast<std::size_t>(l)].push_back(std::move(t));
      }
    for (int l = 0; l < tl; ++l)
      for (int i = 0; i <= l; ++i) {
        std::vector<Cell> t(s.count(l));
        for (Cell c = 0; c < s.count(l); ++c) t[c] = s.degen(l, i, c);
        dlk[static_cast<std::size_t>(l)].push_back(std::move(t));
      }
  }
  return FinBiSimplicialSet(trunc_n, tl, std::move(counts), std::move(fn), std::move(dn),
                            std::move(fl), std::move(dl));
}

FinBiSimplicialSet tw_bisset(const FinBiSimplicialSet& w, int trunc) {
  if (trunc < 0) throw TruncationError("tw_bisset: negative truncation");
  if (w.trunc_n() < 2 * trunc + 1)
    throw TruncationError("tw_bisset: input must be truncated at 2*trunc+1 or higher");
  const int tl = w.trunc_l();
  std::vector<std::vector<std::uint32_t>> counts(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n)
    for (int l = 0; l <= tl; ++l)
      counts[static_cast<std::size_t>(n)].push_back(w.count(2 * n + 1, l));
  auto table = [&](const delta::SimplexMap& op_n, int from_n, int l) {
    std::vector<Cell> t(w.count(from_n, l));
    const auto idl = delta::identity_map(l);
    for (Cell c = 0; c < t.size(); ++c) t[c] = w.act(op_n, idl, c);
    return t;
  };
  Tables fn = empty_tables(trunc), dn = empty_tables(trunc);
  Tables fl = empty_tables(trunc), dl = empty_tables(trunc);
  for (int n = 1; n <= trunc; ++n) {
    fn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(tl) + 1);
    for (int i = 0; i <= n; ++i) {
      const auto q = delta::q_map(delta::face(n, i));
      for (int l = 0; l <= tl; ++l)
        fn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(
            table(q, 2 * n + 1, l));
    }
  }
  for (int n = 0; n < trunc; ++n) {
    dn[static_cast<std::size_t>(n)].resize(static_cast<std::size_t>(tl) + 1);
    for (int i = 0; i <= n; ++i) {
      const auto q = delta::q_map(delta::degeneracy(n, i));
      for (int l = 0; l <= tl; ++l)
        dn[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)].push_back(
            table(q, 2 * n + 1, l));
    }
  }
  for (int n = 0; n <= trunc; ++n) {
    auto& flk = fl[static_cast<std::size_t>(n)];
    auto& dlk = dl[static_cast<std::size_t>(n)];
    flk.resize(static_cast<std::size_t>(tl) + 1);
    dlk.resize(static_cast<std::size_t>(tl) + 1);
    const auto idn = delta::identity_map(2 * n + 1);
    for (int l = 1; l <= tl; ++l)
      for (int i = 0; i <= l; ++i) {
        std::vector<Cell> t(w.count(2 * n + 1, l));
        for (Cell c = 0; c < t.size(); ++c) t[c] = w.act(idn, delta::face(l, i), c);
        flk[static_cast<std::size_t>(l)].push_back(std::move(t));
      }
    for (int l = 0; l < tl; ++l)
      for (int i = 0; i <= l; ++i) {
        std::vector<Cell> t(w.count(2 * n + 1, l));
        for (Cell c = 0; c < t.size(); ++c) t[c] = w.act(idn, delta::degeneracy(l, i), c);
        dlk[static_cast<std::size_t>(l)].push_back(std::move(t));
      }
  }
  return FinBiSimplicialSet(trunc, tl, std::move(counts), std::move(fn), std::move(dn),
                            std::move(fl), std::move(dl));
}

// ---------------------------------------------------------------------------
// Presentations

CellComplexPresentation representable_presentation(int n, int l) {
  if (n < 0 || l < 0) throw DimensionError("representable_presentation: negative degree");
  CellComplexPresentation p;
  p.generators.push_back({n, l});
  p.ambient = GeneratorShape{n, l};
  p.ambient_maps.push_back({delta::identity_map(n), delta::identity_map(l)});
  return p;
}

CellComplexPresentation spine_presentation(int n) {
  if (n < 0) throw DimensionError("spine_presentation: negative degree");
  CellComplexPresentation p;
  p.ambient = GeneratorShape{n, 0};
  const auto id0 = delta::identity_map(0);
  if (n == 0) {
    p.generators.push_back({0, 0});
    p.ambient_maps.push_back({delta::identity_map(0), id0});
    return p;
  }
  for (int i = 0; i < n; ++i) {
    p.generators.push_back({1, 0});
    p.ambient_maps.push_back({delta::SimplexMap(n, {i, i + 1}), id0});
  }
  for (int i = 0; i + 1 < n; ++i)
    p.relations.push_back({GeneratorShape{0, 0},
                           Attachment{static_cast<std::size_t>(i), delta::SimplexMap(1, {1}), id0},
                           Attachment{static_cast<std::size_t>(i) + 1,
                                      delta::SimplexMap(1, {0}), id0}});
  return p;
}

CellComplexPresentation boundary_presentation(int n) {
  if (n < 0) throw DimensionError("boundary_presentation: negative degree");
  CellComplexPresentation p;
  p.ambient = GeneratorShape{n, 0};
  if (n == 0) return p;  // the boundary of a vertex is empty
  const auto id0 = delta::identity_map(0);
  for (int i = 0; i <= n; ++i) {
    p.generators.push_back({n - 1, 0});
    p.ambient_maps.push_back({delta::face(n, i), id0});
  }
  for (int j = 1; n >= 2 && j <= n; ++j)
    for (int i = 0; i < j; ++i)
      p.relations.push_back({GeneratorShape{n - 2, 0},
                             Attachment{static_cast<std::size_t>(j), delta::face(n - 1, i), id0},
                             Attachment{static_cast<std::size_t>(i),
                                        delta::face(n - 1, j - 1), id0}});
  return p;
}

CellComplexPresentation tw_presentation(const CellComplexPresentation& p) {
  CellComplexPresentation out;
  for (const auto& g : p.generators) out.generators.push_back({2 * g.n + 1, g.l});
  for (const auto& r : p.relations)
    out.relations.push_back({GeneratorShape{2 * r.shape.n + 1, r.shape.l},
                             Attachment{r.left.gen, delta::q_map(r.left.op_n), r.left.op_l},
                             Attachment{r.right.gen, delta::q_map(r.right.op_n), r.right.op_l}});
  if (p.ambient) {
    out.ambient = GeneratorShape{2 * p.ambient->n + 1, p.ambient->l};
    for (const auto& a : p.ambient_maps)
      out.ambient_maps.push_back({delta::q_map(a.op_n), a.op_l});
  }
  return out;
}

CellComplexPresentation twisted_boundary_presentation(int n) {
  return tw_presentation(boundary_presentation(n));
}

CellComplexPresentation corner_presentation(int k) {
  if (k < 0) throw DimensionError("corner_presentation: negative degree");
  CellComplexPresentation p = twisted_boundary_presentation(k);
  const auto id0 = delta::identity_map(0);
  const std::size_t block[2] = {p.generators.size(), p.generators.size() + 1};
  const delta::SimplexMap block_map[2] = {delta::block_inclusion_left(k),
                                          delta::block_inclusion_right(k)};
  for (int b = 0; b < 2; ++b) {
    p.generators.push_back({k, 0});
    p.ambient_maps.push_back({block_map[b], id0});
  }
  if (k == 0) return p;  // the blocks are vertices with empty boundaries
  // attach each face of each block to the twisted-boundary generator that
  // covers it, locating the factorization by search
  const auto candidates = delta::all_maps(k - 1, 2 * k - 1);
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i <= k; ++i) {
      const auto composite = delta::compose(block_map[b], delta::face(k, i));
      std::vector<Attachment> found;
      for (std::size_t m = 0; m < block[0]; ++m)
        for (const auto& u : candidates)
          if (delta::compose(p.ambient_maps[m].op_n, u) == composite)
            found.push_back({m, u, id0});
      if (found.size() != 1)
        throw Error("corner_presentation: block face admits " +
                    std::to_string(found.size()) + " factorizations, expected exactly 1");
      p.relations.push_back(
          {GeneratorShape{k - 1, 0},
           Attachment{block[static_cast<std::size_t>(b)], delta::face(k, i), id0},
           found.front()});
    }
  return p;
}

CellComplexPresentation cell_presentation(const sset::FinSimplicialSet& s) {
  CellComplexPresentation p;
  const int trunc = s.trunc();
  const auto id0 = delta::identity_map(0);
  // one generator per nondegenerate cell, in (level, cell) order
  std::vector<std::vector<std::size_t>> gen_of(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<Cell>> nondeg(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    gen_of[n].assign(s.count(n), p.generators.size());  // placeholder, fixed below
    nondeg[n] = s.nondegenerate(n);
    for (Cell c : nondeg[n]) {
      gen_of[n][c] = p.generators.size();
      p.generators.push_back({n, 0});
    }
  }
  // one relation per generator face: glue it to the face's nondegenerate root
  for (int n = 1; n <= trunc; ++n)
    for (Cell x : nondeg[n])
      for (int i = 0; i <= n; ++i) {
        const Cell y = s.face(n, i, x);
        std::vector<Attachment> found;
        for (int e = n - 1; e >= 0; --e)
          for (const auto& u : delta::all_maps(n - 1, e)) {
            if (!u.is_surjective()) continue;
            for (Cell z : nondeg[e])
              if (s.act(u, z) == y) found.push_back({gen_of[e][z], u, id0});
          }
        if (found.size() != 1)
          throw Error("cell_presentation: face admits " + std::to_string(found.size()) +
                      " nondegenerate roots, expected exactly 1");
        p.relations.push_back({GeneratorShape{n - 1, 0},
                               Attachment{gen_of[n][x], delta::face(n, i), id0},
                               found.front()});
      }
  return p;
}

sset::FinSimplicialSet underlying_sset(const FinBiSimplicialSet& w) {
  const int trunc = w.trunc_n();
  std::vector<Cell> counts(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> faces(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> degens(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) {
    counts[n] = w.count(n, 0);
    if (n > 0) {
      faces[n].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) {
        faces[n][i].resize(counts[n]);
        for (Cell c = 0; c < counts[n]; ++c) faces[n][i][c] = w.face_n(n, 0, i, c);
      }
    }
    if (n < trunc) {
      degens[n].resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) {
        degens[n][i].resize(counts[n]);
        for (Cell c = 0; c < counts[n]; ++c) degens[n][i][c] = w.degen_n(n, 0, i, c);
      }
    }
  }
  return sset::FinSimplicialSet(trunc, counts, faces, degens);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Per-generator map caches for one level (k, j).
struct LevelIndex {
  std::vector<std::size_t> offset;                       // per generator
  std::vector<std::vector<delta::SimplexMap>> maps_n;    // per generator
  std::vector<std::vector<delta::SimplexMap>> maps_l;    // per generator
  std::size_t total = 0;

  std::size_t flat(std::size_t gen, const delta::SimplexMap& fn,
                   const delta::SimplexMap& fl) const {
    return offset[gen] + static_cast<std::size_t>(delta::lex_rank(fn)) * maps_l[gen].size() +
           static_cast<std::size_t>(delta::lex_rank(fl));
  }
};

LevelIndex level_index(const CellComplexPresentation& p, int k, int j) {
  LevelIndex ix;
  for (const auto& g : p.generators) {
    ix.offset.push_back(ix.total);
    ix.maps_n.push_back(delta::all_maps(k, g.n));
    ix.maps_l.push_back(delta::all_maps(j, g.l));
    ix.total += ix.maps_n.back().size() * ix.maps_l.back().size();
  }
  return ix;
}

Cell ambient_cell(const CellComplexPresentation& p, int j, std::size_t gen,
                  const delta::SimplexMap& fn, const delta::SimplexMap& fl) {
  const auto an = delta::compose(p.ambient_maps[gen].op_n, fn);
  const auto al = delta::compose(p.ambient_maps[gen].op_l, fl);
  return static_cast<Cell>(delta::lex_rank(an) * delta::count_maps(j, p.ambient->l) +
                           delta::lex_rank(al));
}

}  // namespace

EvaluatedLevel evaluate_level(const CellComplexPresentation& p, int k, int j) {
  if (k < 0 || j < 0) throw DimensionError("evaluate_level: negative level");
  if (p.ambient && p.ambient_maps.size() != p.generators.size())
    throw ValidationError("presentation: one ambient map per generator expected");
  const LevelIndex ix = level_index(p, k, j);
  UnionFind uf(ix.total);
  for (const auto& r : p.relations) {
    if (r.left.gen >= p.generators.size() || r.right.gen >= p.generators.size())
      throw ValidationError("presentation: relation refers to a missing generator");
    for (const auto& cn : delta::all_maps(k, r.shape.n))
      for (const auto& cl : delta::all_maps(j, r.shape.l))
        uf.unite(ix.flat(r.left.gen, delta::compose(r.left.op_n, cn),
                         delta::compose(r.left.op_l, cl)),
                 ix.flat(r.right.gen, delta::compose(r.right.op_n, cn),
                         delta::compose(r.right.op_l, cl)));
  }
  auto cls = uf.classes();
  EvaluatedLevel out;
  out.offset = ix.offset;
  out.class_of.assign(cls.class_of.begin(), cls.class_of.end());
  out.rep = cls.representative;
  out.class_count = static_cast<std::uint32_t>(cls.representative.size());
  if (p.ambient) {
    out.ambient_image.resize(out.class_count);
    std::size_t flat = 0;
    for (std::size_t g = 0; g < p.generators.size(); ++g)
      for (const auto& fn : ix.maps_n[g])
        for (const auto& fl : ix.maps_l[g]) {
          const Cell a = ambient_cell(p, j, g, fn, fl);
          const Cell c = out.class_of[flat];
          if (out.rep[c] == flat)
            out.ambient_image[c] = a;
          else if (out.ambient_image[c] != a)
            throw ValidationError("presentation: identified cells disagree in the ambient at " +
                                  level_str(k, j));
          ++flat;
        }
  }
  return out;
}

EvaluatedComplex evaluate(const CellComplexPresentation& p, int trunc_n, int trunc_l) {
  if (trunc_n < 0 || trunc_l < 0) throw TruncationError("evaluate: negative truncation");
  std::vector<std::vector<EvaluatedLevel>> lev(static_cast<std::size_t>(trunc_n) + 1);
  std::vector<std::vector<LevelIndex>> ixs(static_cast<std::size_t>(trunc_n) + 1);
  for (int k = 0; k <= trunc_n; ++k)
    for (int j = 0; j <= trunc_l; ++j) {
      lev[static_cast<std::size_t>(k)].push_back(evaluate_level(p, k, j));
      ixs[static_cast<std::size_t>(k)].push_back(level_index(p, k, j));
    }
  std::vector<std::vector<std::uint32_t>> counts(static_cast<std::size_t>(trunc_n) + 1);
  for (int k = 0; k <= trunc_n; ++k)
    for (int j = 0; j <= trunc_l; ++j)
      counts[static_cast<std::size_t>(k)].push_back(
          lev[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].class_count);

  // One table for the operator `op` moving in one direction from level (k,j)
  // to (tk,tj). The composed ranks only depend on the coordinate in the moving
  // direction, so they are translated once per generator and shared across
  // the other factor.
  auto moved_table = [&](int k, int j, bool n_dir, const delta::SimplexMap& op, int tk,
                         int tj) {
    const auto& src = lev[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    const auto& six = ixs[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    const auto& tix = ixs[static_cast<std::size_t>(tk)][static_cast<std::size_t>(tj)];
    const auto& tgt = lev[static_cast<std::size_t>(tk)][static_cast<std::size_t>(tj)];
    std::vector<std::vector<std::size_t>> tr(p.generators.size());
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      const auto& moving = n_dir ? six.maps_n[g] : six.maps_l[g];
      tr[g].resize(moving.size());
      for (std::size_t a = 0; a < moving.size(); ++a)
        tr[g][a] = static_cast<std::size_t>(delta::lex_rank(delta::compose(moving[a], op)));
    }
    std::vector<Cell> t(src.class_count);
    for (Cell c = 0; c < src.class_count; ++c) {
      std::size_t flat = src.rep[c];
      std::size_t g = 0;
      while (g + 1 < six.offset.size() && six.offset[g + 1] <= flat) ++g;
      const std::size_t local = flat - six.offset[g];
      const std::size_t a = local / six.maps_l[g].size();
      const std::size_t b = local % six.maps_l[g].size();
      const std::size_t tflat =
          tix.offset[g] + (n_dir ? tr[g][a] : a) * tix.maps_l[g].size() +
          (n_dir ? b : tr[g][b]);
      t[c] = tgt.class_of[tflat];
    }
    return t;
  };

  Tables fn = empty_tables(trunc_n), dn = empty_tables(trunc_n);
  Tables fl = empty_tables(trunc_n), dl = empty_tables(trunc_n);
  for (int k = 1; k <= trunc_n; ++k) {
    fn[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= trunc_l; ++j)
        fn[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].push_back(
            moved_table(k, j, true, delta::face(k, i), k - 1, j));
  }
  for (int k = 0; k < trunc_n; ++k) {
    dn[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= trunc_l; ++j)
        dn[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].push_back(
            moved_table(k, j, true, delta::degeneracy(k, i), k + 1, j));
  }
  for (int k = 0; k <= trunc_n; ++k) {
    auto& flk = fl[static_cast<std::size_t>(k)];
    auto& dlk = dl[static_cast<std::size_t>(k)];
    flk.resize(static_cast<std::size_t>(trunc_l) + 1);
    dlk.resize(static_cast<std::size_t>(trunc_l) + 1);
    for (int j = 1; j <= trunc_l; ++j)
      for (int i = 0; i <= j; ++i)
        flk[static_cast<std::size_t>(j)].push_back(
            moved_table(k, j, false, delta::face(j, i), k, j - 1));
    for (int j = 0; j < trunc_l; ++j)
      for (int i = 0; i <= j; ++i)
        dlk[static_cast<std::size_t>(j)].push_back(
            moved_table(k, j, false, delta::degeneracy(j, i), k, j + 1));
  }
  EvaluatedComplex out{FinBiSimplicialSet(trunc_n, trunc_l, std::move(counts), std::move(fn),
                                          std::move(dn), std::move(fl), std::move(dl)),
                       {}};
  if (p.ambient) {
    out.to_ambient.resize(static_cast<std::size_t>(trunc_n) + 1);
    for (int k = 0; k <= trunc_n; ++k)
      for (int j = 0; j <= trunc_l; ++j)
        out.to_ambient[static_cast<std::size_t>(k)].push_back(
            lev[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)].ambient_image);
  }
  return out;
}

InjectivityReport levelwise_injectivity(const CellComplexPresentation& p, int k_max) {
  if (!p.ambient)
    throw ValidationError("levelwise_injectivity: presentation has no ambient map");
  bool spatial = p.ambient->l > 0;
  for (const auto& g : p.generators) spatial = spatial || g.l > 0;
  const int j_max = spatial ? k_max : 0;
  for (int k = 0; k <= k_max; ++k)
    for (int j = 0; j <= j_max; ++j) {
      const auto lvl = evaluate_level(p, k, j);
      std::map<Cell, Cell> seen;  // ambient cell -> class
      for (Cell c = 0; c < lvl.class_count; ++c) {
        auto [it, fresh] = seen.emplace(lvl.ambient_image[c], c);
        if (!fresh) {
          std::ostringstream os;
          os << "level " << level_str(k, j) << ": classes " << it->second << " and " << c
             << " map to the same ambient cell " << lvl.ambient_image[c];
          return {false, os.str()};
        }
      }
    }
  return {true, ""};
}

sset::FinSimplicialSet mapping_sset(const CellComplexPresentation& a,
                                    const FinBiSimplicialSet& w, int trunc) {
  for (const auto& g : a.generators)
    if (g.l != 0)
      throw ValidationError("mapping_sset: spatially constant generators required");
  for (const auto& r : a.relations)
    if (r.shape.l != 0)
      throw ValidationError("mapping_sset: spatially constant relations required");
  for (const auto& g : a.generators)
    if (g.n > w.trunc_n())
      throw TruncationError("mapping_sset: target truncated below a generator degree");
  if (trunc < 0 || trunc > w.trunc_l())
    throw TruncationError("mapping_sset: spatial truncation out of range");

  const std::size_t ng = a.generators.size();
  std::vector<std::vector<std::vector<Cell>>> tuples(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::map<std::vector<Cell>, Cell>> index(static_cast<std::size_t>(trunc) + 1);
  for (int l = 0; l <= trunc; ++l) {
    const auto idl = delta::identity_map(l);
    auto ok = [&](const std::vector<Cell>& t) {
      for (const auto& r : a.relations)
        if (w.act(r.left.op_n, idl, t[r.left.gen]) != w.act(r.right.op_n, idl, t[r.right.gen]))
          return false;
      return true;
    };
    std::vector<Cell> cur(ng, 0);
    // odometer over all generator tuples, lexicographic
    bool done = false;
    while (!done) {
      if (ok(cur)) {
        index[static_cast<std::size_t>(l)][cur] =
            static_cast<Cell>(tuples[static_cast<std::size_t>(l)].size());
        tuples[static_cast<std::size_t>(l)].push_back(cur);
      }
      done = true;
      for (std::size_t g = ng; g-- > 0;) {
        if (++cur[g] < w.count(a.generators[g].n, l)) {
          done = false;
          break;
        }
        cur[g] = 0;
      }
      if (ng == 0) break;  // the empty tuple appears exactly once
    }
  }

  std::vector<std::uint32_t> counts;
  for (int l = 0; l <= trunc; ++l)
    counts.push_back(static_cast<std::uint32_t>(tuples[static_cast<std::size_t>(l)].size()));
  auto push_along = [&](int l, const delta::SimplexMap& op_l, int to) {
    std::vector<Cell> t(counts[static_cast<std::size_t>(l)]);
    for (Cell c = 0; c < t.size(); ++c) {
      std::vector<Cell> img(ng);
      for (std::size_t g = 0; g < ng; ++g)
        img[g] = w.act(delta::identity_map(a.generators[g].n), op_l,
                       tuples[static_cast<std::size_t>(l)][c][g]);
      auto it = index[static_cast<std::size_t>(to)].find(img);
      if (it == index[static_cast<std::size_t>(to)].end())
        throw Error("mapping_sset: image tuple violates the relations");
      t[c] = it->second;
    }
    return t;
  };
  std::vector<std::vector<std::vector<Cell>>> faces(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> degens(static_cast<std::size_t>(trunc) + 1);
  for (int l = 1; l <= trunc; ++l)
    for (int i = 0; i <= l; ++i)
      faces[static_cast<std::size_t>(l)].push_back(push_along(l, delta::face(l, i), l - 1));
  for (int l = 0; l < trunc; ++l)
    for (int i = 0; i <= l; ++i)
      degens[static_cast<std::size_t>(l)].push_back(
          push_along(l, delta::degeneracy(l, i), l + 1));
  return sset::FinSimplicialSet(trunc, std::move(counts), std::move(faces), std::move(degens));
}

}  // namespace twarrow::bisset
