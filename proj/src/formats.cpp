#include "twarrow/formats.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace twarrow::formats {

namespace {

using fincat::MorId;
using fincat::ObjId;
using sset::Cell;

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

// Comment-stripped, whitespace-split lines; blank lines dropped.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    const bool last = end == std::string::npos;
    if (last) end = text.size();
    ++number;
    std::string raw = text.substr(pos, end - pos);
    if (const std::size_t hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    Line line{number, {}};
    std::istringstream in(raw);
    std::string tok;
    while (in >> tok) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (last) break;
    pos = end + 1;
  }
  return lines;
}

int parse_int(const Line& line, const std::string& tok, const char* what) {
  const bool digits =
      !tok.empty() && tok.size() <= 9 &&
      std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits) fail(line.number, std::string("expected a ") + what + ", got '" + tok + "'");
  return std::stoi(tok);
}

void require_punct(const Line& line, const std::string& got, const char* want) {
  if (got != want)
    fail(line.number, std::string("expected '") + want + "', got '" + got + "'");
}

void check_name(const Line& line, const std::string& name) {
  if (name == ":" || name == "->" || name == "." || name == "=")
    fail(line.number, "'" + name + "' cannot be used as a name");
}

// Zero-padded index, wide enough for every index below `count`.
std::string pad_number(std::size_t i, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t top = count > 0 ? count - 1 : 0; top >= 10; top /= 10) ++width;
  std::string digits = std::to_string(i);
  return std::string(width - digits.size(), '0') + digits;
}

bool is_identity(const fincat::FinCategory& c, MorId m) {
  return c.identity(c.src(m)) == m;
}

// Parses the category schema starting at lines[first]; `fallback_line` names
// the position of the missing body in errors.
NamedCategory parse_category_lines(const std::vector<Line>& lines, std::size_t first,
                                   int fallback_line) {
  if (first >= lines.size()) fail(fallback_line, "expected a 'category' line");
  const Line& head = lines[first];
  if (head.tokens[0] != "category" || head.tokens.size() != 1)
    fail(head.number, "expected a 'category' line");

  NamedCategory out;
  std::map<std::string, ObjId> obj_id;
  std::map<std::string, MorId> mor_id;

  // objects, in declaration order
  for (std::size_t k = first + 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens[0] != "object") continue;
    if (line.tokens.size() != 2) fail(line.number, "expected 'object <name>'");
    check_name(line, line.tokens[1]);
    if (!obj_id.emplace(line.tokens[1], static_cast<ObjId>(out.objects.size())).second)
      fail(line.number, "duplicate object '" + line.tokens[1] + "'");
    out.objects.push_back(line.tokens[1]);
  }
  const auto object_count = static_cast<std::uint32_t>(out.objects.size());
  const auto resolve_obj = [&](const Line& line, const std::string& name) {
    const auto it = obj_id.find(name);
    if (it == obj_id.end()) fail(line.number, "unknown object '" + name + "'");
    return it->second;
  };

  // morphisms and identities, ids in declaration order
  std::vector<ObjId> mor_src, mor_tgt;
  std::vector<MorId> identity_of(object_count, fincat::kNotComposable);
  const auto add_mor = [&](const Line& line, const std::string& name, ObjId s, ObjId t) {
    check_name(line, name);
    const auto id = static_cast<MorId>(out.morphisms.size());
    if (!mor_id.emplace(name, id).second)
      fail(line.number, "duplicate morphism '" + name + "'");
    out.morphisms.push_back(name);
    mor_src.push_back(s);
    mor_tgt.push_back(t);
    return id;
  };
  for (std::size_t k = first + 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens[0] == "identity") {
      if (line.tokens.size() != 4) fail(line.number, "expected 'identity <name> : <object>'");
      require_punct(line, line.tokens[2], ":");
      const ObjId x = resolve_obj(line, line.tokens[3]);
      if (identity_of[x] != fincat::kNotComposable)
        fail(line.number, "object '" + line.tokens[3] + "' already has an identity");
      identity_of[x] = add_mor(line, line.tokens[1], x, x);
    } else if (line.tokens[0] == "morphism") {
      if (line.tokens.size() != 6)
        fail(line.number, "expected 'morphism <name> : <src> -> <tgt>'");
      require_punct(line, line.tokens[2], ":");
      require_punct(line, line.tokens[4], "->");
      add_mor(line, line.tokens[1], resolve_obj(line, line.tokens[3]),
              resolve_obj(line, line.tokens[5]));
    }
  }
  // undeclared identities are appended in object order
  for (ObjId x = 0; x < object_count; ++x) {
    if (identity_of[x] != fincat::kNotComposable) continue;
    const std::string name = "id(" + out.objects[x] + ")";
    if (mor_id.count(name))
      throw ParseError("name '" + name + "' is taken but is not the identity of '" +
                       out.objects[x] + "'");
    identity_of[x] = add_mor(head, name, x, x);
  }
  const auto resolve_mor = [&](const Line& line, const std::string& name) {
    if (const auto it = mor_id.find(name); it != mor_id.end()) return it->second;
    // id(<object>) always names the object's identity, declared or not
    if (name.size() > 4 && name.compare(0, 3, "id(") == 0 && name.back() == ')') {
      const std::string obj = name.substr(3, name.size() - 4);
      if (const auto it = obj_id.find(obj); it != obj_id.end()) return identity_of[it->second];
    }
    fail(line.number, "unknown morphism '" + name + "'");
  };

  // composites of non-identity pairs; identity composites are checked, then
  // derived from the axioms
  std::map<std::pair<MorId, MorId>, MorId> composite;
  for (std::size_t k = first + 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens[0] == "object" || line.tokens[0] == "identity" ||
        line.tokens[0] == "morphism" || line.tokens[0] == "category")
      continue;
    if (line.tokens[0] != "compose")
      fail(line.number, "unrecognized directive '" + line.tokens[0] + "'");
    if (line.tokens.size() != 6) fail(line.number, "expected 'compose <g> . <f> = <h>'");
    require_punct(line, line.tokens[2], ".");
    require_punct(line, line.tokens[4], "=");
    const MorId g = resolve_mor(line, line.tokens[1]);
    const MorId f = resolve_mor(line, line.tokens[3]);
    const MorId h = resolve_mor(line, line.tokens[5]);
    if (mor_tgt[f] != mor_src[g])
      fail(line.number,
           "'" + line.tokens[1] + "' and '" + line.tokens[3] + "' are not composable");
    const bool g_id = g == identity_of[mor_src[g]];
    const bool f_id = f == identity_of[mor_src[f]];
    if (g_id || f_id) {
      const MorId want = g_id ? f : g;
      if (h != want)
        fail(line.number, "identity composite must equal '" + out.morphisms[want] + "'");
      continue;
    }
    const auto [it, fresh] = composite.emplace(std::make_pair(g, f), h);
    if (!fresh && it->second != h)
      fail(line.number, "conflicting composite for '" + line.tokens[1] + " . " +
                            line.tokens[3] + "'");
  }
  std::vector<std::array<MorId, 3>> triples;
  triples.reserve(composite.size());
  for (const auto& [pair, h] : composite) triples.push_back({pair.first, pair.second, h});
  for (MorId g = 0; g < mor_src.size(); ++g)
    for (MorId f = 0; f < mor_src.size(); ++f) {
      if (mor_tgt[f] != mor_src[g]) continue;
      if (g == identity_of[mor_src[g]] || f == identity_of[mor_src[f]]) continue;
      if (!composite.count({g, f}))
        throw ParseError("missing composite '" + out.morphisms[g] + " . " + out.morphisms[f] +
                         "'");
    }

  try {
    out.category = fincat::FinCategory::from_triples(object_count, std::move(mor_src),
                                                     std::move(mor_tgt), identity_of, triples);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid category: ") + e.what());
  }
  if (const auto err = out.category.validate())
    throw ParseError("invalid category: " + *err);
  return out;
}

SpaceRecipe::Kind parse_kind(const Line& line, const std::string& tok) {
  if (tok == "classifying-diagram") return SpaceRecipe::Kind::classifying_diagram;
  if (tok == "discrete-nerve") return SpaceRecipe::Kind::discrete_nerve;
  fail(line.number, "unknown space kind '" + tok +
                        "', expected 'classifying-diagram' or 'discrete-nerve'");
}

const char* kind_token(SpaceRecipe::Kind k) {
  return k == SpaceRecipe::Kind::classifying_diagram ? "classifying-diagram" : "discrete-nerve";
}

}  // namespace

NamedCategory name_category_with(const fincat::FinCategory& c,
                                 std::vector<std::string> object_names) {
  if (object_names.size() != c.object_count())
    throw ValidationError("name_category_with: one name per object required");
  NamedCategory out;
  out.category = c;
  out.objects = std::move(object_names);
  std::size_t plain = 0;
  for (MorId m = 0; m < c.morphism_count(); ++m)
    if (!is_identity(c, m)) ++plain;
  std::size_t next = 0;
  for (MorId m = 0; m < c.morphism_count(); ++m)
    out.morphisms.push_back(is_identity(c, m) ? "id(" + out.objects[c.src(m)] + ")"
                                              : "f" + pad_number(next++, plain));
  return out;
}

NamedCategory name_category(const fincat::FinCategory& c) {
  std::vector<std::string> objects;
  for (ObjId x = 0; x < c.object_count(); ++x)
    objects.push_back("x" + pad_number(x, c.object_count()));
  return name_category_with(c, std::move(objects));
}

NamedSSet name_sset(const sset::FinSimplicialSet& s) {
  NamedSSet out;
  out.sset = s;
  out.names.resize(static_cast<std::size_t>(s.trunc()) + 1);
  for (int n = 0; n <= s.trunc(); ++n)
    for (Cell c = 0; c < s.count(n); ++c)
      out.names[n].push_back("c" + pad_number(c, s.count(n)));
  return out;
}

DocKind sniff_kind(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty document");
  const std::string& head = lines.front().tokens[0];
  if (head == "category") return DocKind::category;
  if (head == "sset") return DocKind::sset;
  if (head == "gss") return DocKind::space;
  fail(lines.front().number, "unrecognized document kind '" + head + "'");
}

std::string serialize_category(const NamedCategory& c) {
  const auto& cat = c.category;
  if (c.objects.size() != cat.object_count() || c.morphisms.size() != cat.morphism_count())
    throw ValidationError("serialize_category: name tables do not match the category");
  std::string out = "category\n";
  for (ObjId x = 0; x < cat.object_count(); ++x) out += "object " + c.objects[x] + "\n";
  for (MorId m = 0; m < cat.morphism_count(); ++m) {
    if (is_identity(cat, m))
      out += "identity " + c.morphisms[m] + " : " + c.objects[cat.src(m)] + "\n";
    else
      out += "morphism " + c.morphisms[m] + " : " + c.objects[cat.src(m)] + " -> " +
             c.objects[cat.tgt(m)] + "\n";
  }
  for (MorId g = 0; g < cat.morphism_count(); ++g) {
    if (is_identity(cat, g)) continue;
    for (MorId f = 0; f < cat.morphism_count(); ++f) {
      if (is_identity(cat, f) || !cat.is_composable(g, f)) continue;
      out += "compose " + c.morphisms[g] + " . " + c.morphisms[f] + " = " +
             c.morphisms[cat.compose(g, f)] + "\n";
    }
  }
  return out;
}

NamedCategory parse_category(const std::string& text) {
  return parse_category_lines(tokenize(text), 0, 1);
}

std::string serialize_sset(const NamedSSet& s) {
  const auto& set = s.sset;
  if (static_cast<int>(s.names.size()) != set.trunc() + 1)
    throw ValidationError("serialize_sset: name table does not match the truncation");
  for (int n = 0; n <= set.trunc(); ++n)
    if (s.names[n].size() != set.count(n))
      throw ValidationError("serialize_sset: name table does not match level " +
                            std::to_string(n));
  std::string out = "sset trunc " + std::to_string(set.trunc()) + "\n";
  for (int n = 0; n <= set.trunc(); ++n) {
    if (set.count(n) == 0) continue;
    out += "cells " + std::to_string(n) + " :";
    for (Cell c = 0; c < set.count(n); ++c) out += " " + s.names[n][c];
    out += "\n";
  }
  for (int n = 1; n <= set.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < set.count(n); ++c)
        out += "face " + std::to_string(n) + " " + std::to_string(i) + " " + s.names[n][c] +
               " = " + s.names[n - 1][set.face(n, i, c)] + "\n";
  for (int n = 0; n < set.trunc(); ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < set.count(n); ++c)
        out += "degen " + std::to_string(n) + " " + std::to_string(i) + " " + s.names[n][c] +
               " = " + s.names[n + 1][set.degen(n, i, c)] + "\n";
  return out;
}

NamedSSet parse_sset(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty document");
  const Line& head = lines.front();
  if (head.tokens[0] != "sset" || head.tokens.size() != 3 || head.tokens[1] != "trunc")
    fail(head.number, "expected 'sset trunc <T>'");
  const int trunc = parse_int(head, head.tokens[2], "truncation level");

  NamedSSet out;
  out.names.resize(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::map<std::string, Cell>> cell_id(static_cast<std::size_t>(trunc) + 1);
  std::vector<bool> declared(static_cast<std::size_t>(trunc) + 1, false);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens[0] != "cells") continue;
    if (line.tokens.size() < 4 || line.tokens[2] != ":")
      fail(line.number, "expected 'cells <n> : <names...>'");
    const int n = parse_int(line, line.tokens[1], "level");
    if (n > trunc) fail(line.number, "level exceeds the truncation");
    if (declared[n]) fail(line.number, "duplicate cells line for level " + std::to_string(n));
    declared[n] = true;
    for (std::size_t t = 3; t < line.tokens.size(); ++t) {
      check_name(line, line.tokens[t]);
      if (!cell_id[n].emplace(line.tokens[t], static_cast<Cell>(out.names[n].size())).second)
        fail(line.number, "duplicate cell '" + line.tokens[t] + "'");
      out.names[n].push_back(line.tokens[t]);
    }
  }

  std::vector<Cell> counts(static_cast<std::size_t>(trunc) + 1);
  for (int n = 0; n <= trunc; ++n) counts[n] = static_cast<Cell>(out.names[n].size());
  const auto resolve_cell = [&](const Line& line, int n, const std::string& name) {
    const auto it = cell_id[n].find(name);
    if (it == cell_id[n].end())
      fail(line.number, "unknown cell '" + name + "' at level " + std::to_string(n));
    return it->second;
  };

  std::vector<std::vector<std::vector<Cell>>> faces(static_cast<std::size_t>(trunc) + 1);
  std::vector<std::vector<std::vector<Cell>>> degens(static_cast<std::size_t>(trunc) + 1);
  constexpr Cell kUnset = 0xffffffffu;
  for (int n = 1; n <= trunc; ++n)
    faces[n].assign(static_cast<std::size_t>(n) + 1, std::vector<Cell>(counts[n], kUnset));
  for (int n = 0; n < trunc; ++n)
    degens[n].assign(static_cast<std::size_t>(n) + 1, std::vector<Cell>(counts[n], kUnset));

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    const bool face = line.tokens[0] == "face";
    if (!face && line.tokens[0] != "degen") {
      if (line.tokens[0] != "cells")
        fail(line.number, "unrecognized directive '" + line.tokens[0] + "'");
      continue;
    }
    if (line.tokens.size() != 6 || line.tokens[4] != "=")
      fail(line.number, face ? "expected 'face <n> <i> <cell> = <cell>'"
                             : "expected 'degen <n> <i> <cell> = <cell>'");
    const int n = parse_int(line, line.tokens[1], "level");
    const int i = parse_int(line, line.tokens[2], "operator index");
    if (face && (n < 1 || n > trunc))
      fail(line.number, "face level must be between 1 and the truncation");
    if (!face && n >= trunc)
      fail(line.number, "degeneracy level must be below the truncation");
    if (i > n) fail(line.number, "operator index exceeds the level");
    const Cell from = resolve_cell(line, n, line.tokens[3]);
    const Cell to = resolve_cell(line, face ? n - 1 : n + 1, line.tokens[5]);
    Cell& slot = face ? faces[n][i][from] : degens[n][i][from];
    if (slot != kUnset)
      fail(line.number, "duplicate entry for '" + line.tokens[3] + "'");
    slot = to;
  }
  for (int n = 1; n <= trunc; ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < counts[n]; ++c)
        if (faces[n][i][c] == kUnset)
          throw ParseError("missing face " + std::to_string(n) + " " + std::to_string(i) + " " +
                           out.names[n][c]);
  for (int n = 0; n < trunc; ++n)
    for (int i = 0; i <= n; ++i)
      for (Cell c = 0; c < counts[n]; ++c)
        if (degens[n][i][c] == kUnset)
          throw ParseError("missing degen " + std::to_string(n) + " " + std::to_string(i) + " " +
                           out.names[n][c]);

  try {
    out.sset = sset::FinSimplicialSet(trunc, std::move(counts), std::move(faces),
                                      std::move(degens));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid simplicial set: ") + e.what());
  }
  if (const auto err = out.sset.validate())
    throw ParseError("invalid simplicial set: " + *err);
  return out;
}

std::string serialize_space(const SpaceRecipe& r) {
  return std::string("gss ") + kind_token(r.kind) + " trunc " + std::to_string(r.trunc) + "\n" +
         serialize_category(r.category);
}

SpaceRecipe parse_space(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty document");
  const Line& head = lines.front();
  if (head.tokens[0] != "gss" || head.tokens.size() != 4 || head.tokens[2] != "trunc")
    fail(head.number, "expected 'gss <kind> trunc <T>'");
  SpaceRecipe out;
  out.kind = parse_kind(head, head.tokens[1]);
  out.trunc = parse_int(head, head.tokens[3], "truncation level");
  out.category = parse_category_lines(lines, 1, head.number);
  return out;
}

gss::GroupoidSimplicialSpace build_space(const SpaceRecipe& r) {
  if (r.kind == SpaceRecipe::Kind::classifying_diagram)
    return gss::classifying_diagram(r.category.category, r.trunc);
  return gss::discrete_embedding(sset::nerve(r.category.category, r.trunc).sset);
}

}  // namespace twarrow::formats
