#include "twarrow/delta.hpp"

#include <algorithm>
#include <sstream>

namespace twarrow::delta {

SimplexMap::SimplexMap(int cod, std::vector<int> values)
    : cod_(cod), values_(std::move(values)) {
  if (cod_ < 0) throw DimensionError("simplex map: negative codomain [" + std::to_string(cod_) + "]");
  if (values_.empty()) throw DimensionError("simplex map: empty value sequence (domain [-1] is not an object)");
  int prev = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    int v = values_[i];
    if (v < 0 || v > cod_)
      throw DimensionError("simplex map: value " + std::to_string(v) + " outside [0," + std::to_string(cod_) + "]");
    if (i > 0 && v < prev) throw ValidationError("simplex map: values not monotone");
    prev = v;
  }
}

int SimplexMap::operator()(int i) const {
  if (i < 0 || i > dom())
    throw DimensionError("simplex map: argument " + std::to_string(i) + " outside domain [" + std::to_string(dom()) + "]");
  return values_[static_cast<std::size_t>(i)];
}

bool SimplexMap::is_identity() const {
  if (dom() != cod()) return false;
  for (int i = 0; i <= dom(); ++i)
    if (values_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

bool SimplexMap::is_injective() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] == values_[i - 1]) return false;
  return true;
}

bool SimplexMap::is_surjective() const {
  int next = 0;
  for (int v : values_) {
    if (v == next) ++next;
    else if (v > next) return false;
  }
  return next == cod_ + 1;
}

bool SimplexMap::operator<(const SimplexMap& other) const {
  if (cod_ != other.cod_) return cod_ < other.cod_;
  return values_ < other.values_;
}

std::string SimplexMap::str() const {
  std::ostringstream os;
  os << "[" << dom() << "]->[" << cod() << "]: (";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ",";
    os << values_[i];
  }
  os << ")";
  return os.str();
}

SimplexMap identity_map(int n) {
  if (n < 0) throw DimensionError("identity_map: negative ordinal");
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return SimplexMap(n, std::move(v));
}

SimplexMap compose(const SimplexMap& f, const SimplexMap& g) {
  if (g.cod() != f.dom())
    throw DimensionError("compose: codomain [" + std::to_string(g.cod()) + "] != domain [" + std::to_string(f.dom()) + "]");
  std::vector<int> v(static_cast<std::size_t>(g.dom()) + 1);
  for (int i = 0; i <= g.dom(); ++i) v[static_cast<std::size_t>(i)] = f(g(i));
  return SimplexMap(f.cod(), std::move(v));
}

SimplexMap face(int n, int i) {
  if (n < 1) throw DimensionError("face: [" + std::to_string(n) + "] has no faces");
  if (i < 0 || i > n) throw DimensionError("face: index " + std::to_string(i) + " outside 0.." + std::to_string(n));
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = j < i ? j : j + 1;
  return SimplexMap(n, std::move(v));
}

SimplexMap degeneracy(int n, int i) {
  if (n < 0) throw DimensionError("degeneracy: negative ordinal");
  if (i < 0 || i > n) throw DimensionError("degeneracy: index " + std::to_string(i) + " outside 0.." + std::to_string(n));
  std::vector<int> v(static_cast<std::size_t>(n) + 2);
  for (int j = 0; j <= n + 1; ++j) v[static_cast<std::size_t>(j)] = j <= i ? j : j - 1;
  return SimplexMap(n, std::move(v));
}

EzFactorization ez_factorize(const SimplexMap& f) {
  // Image, sorted and deduplicated: the injection's value sequence.
  std::vector<int> image = f.values();
  image.erase(std::unique(image.begin(), image.end()), image.end());
  int rank = static_cast<int>(image.size()) - 1;
  std::vector<int> surj(static_cast<std::size_t>(f.dom()) + 1);
  for (int i = 0; i <= f.dom(); ++i) {
    auto it = std::lower_bound(image.begin(), image.end(), f(i));
    surj[static_cast<std::size_t>(i)] = static_cast<int>(it - image.begin());
  }
  EzFactorization out{SimplexMap(rank, std::move(surj)), SimplexMap(f.cod(), std::move(image))};
  return out;
}

std::vector<int> face_word(const SimplexMap& injection) {
  if (!injection.is_injective()) throw ValidationError("face_word: map is not injective");
  // Complement of the image, in decreasing order.
  std::vector<int> word;
  std::vector<bool> hit(static_cast<std::size_t>(injection.cod()) + 1, false);
  for (int v : injection.values()) hit[static_cast<std::size_t>(v)] = true;
  for (int v = injection.cod(); v >= 0; --v)
    if (!hit[static_cast<std::size_t>(v)]) word.push_back(v);
  return word;
}

std::vector<int> degeneracy_word(const SimplexMap& surjection) {
  if (!surjection.is_surjective()) throw ValidationError("degeneracy_word: map is not surjective");
  std::vector<int> word;
  for (int j = 0; j < surjection.dom(); ++j)
    if (surjection(j) == surjection(j + 1)) word.push_back(surjection(j));
  return word;
}

int q_object(int n) {
  if (n < 0) throw DimensionError("q_object: negative ordinal");
  return 2 * n + 1;
}

SimplexMap q_map(const SimplexMap& a) {
  int m = a.dom(), n = a.cod();
  std::vector<int> v(static_cast<std::size_t>(2 * m + 2));
  for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = n - a(m - i);
  for (int j = 0; j <= m; ++j) v[static_cast<std::size_t>(m + 1 + j)] = n + 1 + a(j);
  return SimplexMap(2 * n + 1, std::move(v));
}

SimplexMap op_map(const SimplexMap& a) {
  std::vector<int> v(static_cast<std::size_t>(a.dom()) + 1);
  for (int i = 0; i <= a.dom(); ++i) v[static_cast<std::size_t>(i)] = a.cod() - a(a.dom() - i);
  return SimplexMap(a.cod(), std::move(v));
}

SimplexMap block_inclusion_left(int n) {
  if (n < 0) throw DimensionError("block_inclusion_left: negative ordinal");
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return SimplexMap(2 * n + 1, std::move(v));
}

SimplexMap block_inclusion_right(int n) {
  if (n < 0) throw DimensionError("block_inclusion_right: negative ordinal");
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) v[static_cast<std::size_t>(j)] = n + 1 + j;
  return SimplexMap(2 * n + 1, std::move(v));
}

std::vector<SimplexMap> all_maps(int dom, int cod) {
  if (dom < 0) throw DimensionError("all_maps: negative domain");
  std::vector<SimplexMap> out;
  if (cod < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(dom) + 1, 0);
  while (true) {
    out.emplace_back(cod, cur);
    // next monotone sequence in lexicographic order
    int k = dom;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == cod) --k;
    if (k < 0) break;
    int v = ++cur[static_cast<std::size_t>(k)];
    for (int j = k + 1; j <= dom; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

std::uint64_t count_maps(int dom, int cod) {
  if (dom < 0) throw DimensionError("count_maps: negative domain");
  if (cod < 0) return 0;
  // C(cod + dom + 1, dom + 1)
  std::uint64_t r = 1;
  for (int i = 1; i <= dom + 1; ++i) {
    r = r * static_cast<std::uint64_t>(cod + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::uint64_t lex_rank(const SimplexMap& f) {
  // Count monotone sequences that sort strictly before f: sum, over each
  // position p and each smaller value v >= f(p-1) it could take, the number
  // of monotone completions of the remaining positions with values >= v.
  std::uint64_t rank = 0;
  int prev = 0;
  for (int p = 0; p <= f.dom(); ++p) {
    for (int v = prev; v < f(p); ++v) {
      int remaining = f.dom() - p - 1;
      rank += remaining < 0 ? 1 : count_maps(remaining, f.cod() - v);
    }
    prev = f(p);
  }
  return rank;
}

}  // namespace twarrow::delta
