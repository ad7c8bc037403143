#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twarrow {

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy. Every precondition failure is loud; nothing truncates or
// clamps silently.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched ordinal dimensions (composition, map application, ...).
struct DimensionError : Error {
  using Error::Error;
};

// An operation needs more stored levels than the object carries.
struct TruncationError : Error {
  using Error::Error;
};

// Structurally invalid input data (broken identities, non-congruence, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Malformed text input.
struct ParseError : Error {
  using Error::Error;
};

// Union-find over 0..n-1 with minimum-index representatives: the canonical
// representative of a class is its smallest member, which keeps every
// quotient deterministic.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

  // Representatives in increasing order plus a class index per element.
  // Class ids are assigned by increasing representative, so they are stable
  // across runs.
  struct Classes {
    std::vector<std::size_t> representative;  // class id -> smallest element
    std::vector<std::uint32_t> class_of;      // element -> class id
  };
  Classes classes() const {
    Classes out;
    out.class_of.assign(parent_.size(), 0);
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      if (find(i) == i) {
        out.class_of[i] = static_cast<std::uint32_t>(out.representative.size());
        out.representative.push_back(i);
      } else {
        out.class_of[i] = out.class_of[find(i)];
      }
    }
    return out;
  }

 private:
  mutable std::vector<std::size_t> parent_;
};

}  // namespace twarrow
