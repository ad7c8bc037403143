#include "twarrow/fixtures.hpp"

#include <algorithm>
#include <functional>

namespace twarrow::fixtures {

namespace {

// Thin category from a reachability predicate: one morphism x -> y whenever
// related(x, y). Morphisms are listed lexicographically by (x, y).
fincat::FinCategory thin_from_relation(std::uint32_t objects,
                                       const std::function<bool(fincat::ObjId, fincat::ObjId)>& related) {
  std::vector<fincat::ObjId> src;
  std::vector<fincat::ObjId> tgt;
  for (fincat::ObjId x = 0; x < objects; ++x)
    for (fincat::ObjId y = 0; y < objects; ++y)
      if (x == y || related(x, y)) {
        src.push_back(x);
        tgt.push_back(y);
      }
  return fincat::FinCategory::thin(objects, std::move(src), std::move(tgt));
}

}  // namespace

fincat::FinCategory terminal_category() { return chain_category(0); }

fincat::FinCategory chain_category(int n) {
  return thin_from_relation(static_cast<std::uint32_t>(n + 1),
                            [](fincat::ObjId x, fincat::ObjId y) { return x <= y; });
}

fincat::FinCategory square_category() {
  // object (a, b) has id 2a + b; (a, b) <= (c, d) componentwise
  return thin_from_relation(4, [](fincat::ObjId x, fincat::ObjId y) {
    return (x / 2) <= (y / 2) && (x % 2) <= (y % 2);
  });
}

fincat::FinCategory span_category() {
  return thin_from_relation(3, [](fincat::ObjId x, fincat::ObjId y) { return x == 0 && y != 0; });
}

fincat::FinCategory cospan_category() {
  return thin_from_relation(3, [](fincat::ObjId x, fincat::ObjId y) { return x != 2 && y == 2; });
}

fincat::FinCategory discrete_category(int n) {
  return thin_from_relation(static_cast<std::uint32_t>(n), [](fincat::ObjId, fincat::ObjId) { return false; });
}

fincat::FinCategory walking_iso() {
  // exactly one morphism between any two objects: both non-identities are
  // mutually inverse
  return thin_from_relation(2, [](fincat::ObjId, fincat::ObjId) { return true; });
}

fincat::FinCategory parallel_pair() {
  // morphisms: 0 = id_0, 1 = id_1, 2 and 3 the parallel arrows 0 -> 1
  return fincat::FinCategory::from_triples(2, {0, 1, 0, 0}, {0, 1, 1, 1}, {0, 1}, {});
}

fincat::FinCategory idempotent_monoid() {
  // morphisms: 0 = id, 1 = e with e . e = e
  return fincat::FinCategory::from_triples(1, {0, 0}, {0, 0}, {0}, {{1, 1, 1}});
}

fincat::FinCategory involution_group() {
  // morphisms: 0 = id, 1 = t with t . t = id
  return fincat::FinCategory::from_triples(1, {0, 0}, {0, 0}, {0}, {{1, 1, 0}});
}

const std::vector<std::string>& zoo_names() {
  static const std::vector<std::string> names = {"terminal", "arrow",     "chain2",   "chain3",
                                                 "square",   "span",      "cospan",   "discrete2",
                                                 "parallel", "idem",      "iso",      "involution"};
  return names;
}

fincat::FinCategory zoo_category(const std::string& name) {
  if (name == "terminal") return terminal_category();
  if (name == "arrow") return chain_category(1);
  if (name == "chain2") return chain_category(2);
  if (name == "chain3") return chain_category(3);
  if (name == "square") return square_category();
  if (name == "span") return span_category();
  if (name == "cospan") return cospan_category();
  if (name == "discrete2") return discrete_category(2);
  if (name == "parallel") return parallel_pair();
  if (name == "idem") return idempotent_monoid();
  if (name == "iso") return walking_iso();
  if (name == "involution") return involution_group();
  throw Error("unknown fixture category: " + name);
}

const std::vector<std::string>& thin_zoo_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out = zoo_names();
    out.erase(std::remove(out.begin(), out.end(), "involution"), out.end());
    return out;
  }();
  return names;
}

}  // namespace twarrow::fixtures
