#include "wca/model_io.hpp"

#include "wca/errors.hpp"
#include "wca/tokens.hpp"
#include "wca/workspace.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace wca {

namespace {

struct Line {
  std::size_t number;
  std::string directive;
  std::string rest;
};

std::vector<Line> read_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line{trim(raw)};
    if (line.empty()) continue;
    if (line[0] != '@') throw ParseError(no, "expected a @directive line");
    auto sp = line.find_first_of(" \t");
    std::string head = sp == std::string::npos ? line : line.substr(0, sp);
    std::string rest =
        sp == std::string::npos ? "" : std::string{trim(line.substr(sp))};
    out.push_back({no, head, rest});
  }
  return out;
}

void check_name(std::size_t line, const std::string& n) {
  if (n.empty()) throw ParseError(line, "empty name");
  if (n.find_first_of(" \t,{}()\"") != std::string::npos)
    throw ParseError(line, "invalid character in name '" + n + "'");
}

std::vector<std::string> name_list(std::size_t line, const std::string& s) {
  std::vector<std::string> out;
  for (const auto& part : split_top_level(s, ',')) {
    std::string n{trim(part)};
    check_name(line, n);
    out.push_back(std::move(n));
  }
  if (out.empty()) throw ParseError(line, "empty list");
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::size_t index_in(std::size_t line, const std::vector<std::string>& v,
                     const std::string& n, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == n) return i;
  throw ParseError(line, std::string("unknown ") + what + " '" + n + "'");
}

Model parse_wa(const std::vector<Line>& lines, const Registry& reg) {
  std::string semiring, alphabet_s, states_s;
  std::size_t semiring_line = 0;
  std::vector<const Line*> edges, finals;
  for (const auto& l : lines) {
    if (l.directive == "@semiring") {
      if (!semiring.empty()) throw ParseError(l.number, "repeated @semiring");
      semiring = l.rest;
      semiring_line = l.number;
    } else if (l.directive == "@alphabet") {
      if (!alphabet_s.empty())
        throw ParseError(l.number, "repeated @alphabet");
      alphabet_s = l.rest;
    } else if (l.directive == "@states") {
      if (!states_s.empty()) throw ParseError(l.number, "repeated @states");
      states_s = l.rest;
    } else if (l.directive == "@edge") {
      edges.push_back(&l);
    } else if (l.directive == "@final") {
      finals.push_back(&l);
    } else {
      throw ParseError(l.number, "unknown directive " + l.directive);
    }
  }
  if (semiring.empty()) throw ParseError(0, "missing @semiring");
  if (states_s.empty()) throw ParseError(0, "missing @states");
  if (alphabet_s.empty()) throw ParseError(0, "missing @alphabet");

  Model m;
  m.semiring_name = semiring;
  WeightedAutomaton wa;
  try {
    wa.sr = reg.resolve(semiring);
  } catch (const UnknownSemiring&) {
    throw ParseError(semiring_line, "unknown semiring '" + semiring + "'");
  }
  wa.states = name_list(0, states_s);
  wa.alphabet = name_list(0, alphabet_s);
  std::size_t n = wa.states.size();
  wa.transitions.assign(wa.alphabet.size(), Matrix(n, n, wa.sr->zero()));
  wa.termination.assign(n, wa.sr->zero());

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> seen;
  for (const Line* l : edges) {
    auto parts = split_ws(l->rest);
    if (parts.size() < 4)
      throw ParseError(l->number, "@edge needs: from symbol to weight");
    std::size_t x = index_in(l->number, wa.states, parts[0], "state");
    std::size_t a = index_in(l->number, wa.alphabet, parts[1], "symbol");
    std::size_t y = index_in(l->number, wa.states, parts[2], "state");
    std::string weight = parts[3];
    for (std::size_t i = 4; i < parts.size(); ++i) weight += " " + parts[i];
    if (!seen.emplace(std::make_tuple(x, a, y), true).second)
      throw ParseError(l->number, "repeated @edge for the same triple");
    try {
      wa.transitions[a].at(x, y) = wa.sr->parse(weight);
    } catch (const MalformedElement& e) {
      throw ParseError(l->number, e.what());
    }
  }
  std::map<std::size_t, bool> seen_final;
  for (const Line* l : finals) {
    auto parts = split_ws(l->rest);
    if (parts.size() < 2)
      throw ParseError(l->number, "@final needs: state weight");
    std::size_t x = index_in(l->number, wa.states, parts[0], "state");
    std::string weight = parts[1];
    for (std::size_t i = 2; i < parts.size(); ++i) weight += " " + parts[i];
    if (!seen_final.emplace(x, true).second)
      throw ParseError(l->number, "repeated @final for state " + parts[0]);
    try {
      wa.termination[x] = wa.sr->parse(weight);
    } catch (const MalformedElement& e) {
      throw ParseError(l->number, e.what());
    }
  }
  validate(wa);
  m.wa = std::move(wa);
  return m;
}

Model parse_cts(const std::vector<Line>& lines, const Registry& reg) {
  std::string conditions_s, features_s, upgrades_s, states_s, alphabet_s;
  std::string semiring;
  std::size_t semiring_line = 0;
  std::vector<std::pair<std::string, std::string>> le_pairs;
  std::vector<const Line*> edges;
  for (const auto& l : lines) {
    if (l.directive == "@conditions") {
      if (!conditions_s.empty())
        throw ParseError(l.number, "repeated @conditions");
      conditions_s = l.rest;
    } else if (l.directive == "@le") {
      auto parts = split_ws(l.rest);
      if (parts.size() != 2)
        throw ParseError(l.number, "@le needs: lesser greater");
      le_pairs.emplace_back(parts[0], parts[1]);
    } else if (l.directive == "@features") {
      if (!features_s.empty())
        throw ParseError(l.number, "repeated @features");
      features_s = l.rest;
    } else if (l.directive == "@upgrades") {
      if (!upgrades_s.empty())
        throw ParseError(l.number, "repeated @upgrades");
      upgrades_s = l.rest;
    } else if (l.directive == "@states") {
      if (!states_s.empty()) throw ParseError(l.number, "repeated @states");
      states_s = l.rest;
    } else if (l.directive == "@alphabet") {
      if (!alphabet_s.empty())
        throw ParseError(l.number, "repeated @alphabet");
      alphabet_s = l.rest;
    } else if (l.directive == "@semiring") {
      if (!semiring.empty()) throw ParseError(l.number, "repeated @semiring");
      semiring = l.rest;
      semiring_line = l.number;
    } else if (l.directive == "@edge") {
      edges.push_back(&l);
    } else if (l.directive == "@final") {
      throw ParseError(l.number, "a CTS has no @final weights");
    } else {
      throw ParseError(l.number, "unknown directive " + l.directive);
    }
  }
  if (states_s.empty()) throw ParseError(0, "missing @states");
  if (alphabet_s.empty()) throw ParseError(0, "missing @alphabet");

  bool inline_poset = !conditions_s.empty();
  bool feature_form = !features_s.empty() || !upgrades_s.empty();
  if (inline_poset + feature_form + !semiring.empty() != 1)
    throw ParseError(0,
                     "conditions must come from exactly one of @conditions, "
                     "@features/@upgrades, or @semiring");
  if (feature_form && features_s.empty())
    throw ParseError(0, "@upgrades without @features");

  Model m;
  auto states = name_list(0, states_s);
  auto alphabet = name_list(0, alphabet_s);
  Cts cts = [&] {
    if (inline_poset)
      return Cts::over_poset(std::move(states), std::move(alphabet),
                             Poset(name_list(0, conditions_s), le_pairs));
    if (feature_form) {
      std::vector<std::string> ups;
      if (!upgrades_s.empty()) ups = name_list(0, upgrades_s);
      return Cts::over_features(
          std::move(states), std::move(alphabet),
          FeatureModel(name_list(0, features_s), std::move(ups)));
    }
    const Poset* p = reg.defined_poset(semiring);
    if (!p)
      throw ParseError(semiring_line, "'" + semiring +
                                          "' is not a defined poset-lattice");
    m.semiring_name = semiring;
    return Cts::over_poset(std::move(states), std::move(alphabet), *p);
  }();

  for (const Line* l : edges) {
    auto brace = l->rest.find('{');
    if (brace == std::string::npos || l->rest.back() != '}')
      throw ParseError(l->number, "@edge needs a {condition set} guard");
    auto parts = split_ws(l->rest.substr(0, brace));
    if (parts.size() != 3)
      throw ParseError(l->number, "@edge needs: from symbol to {guard}");
    std::size_t x = index_in(l->number, cts.states, parts[0], "state");
    std::size_t a = index_in(l->number, cts.alphabet, parts[1], "symbol");
    std::size_t y = index_in(l->number, cts.states, parts[2], "state");
    std::string inner{
        trim(l->rest.substr(brace + 1, l->rest.size() - brace - 2))};
    DenseBitset guard(cts.condition_count());
    if (!inner.empty())
      for (const auto& tok : split_top_level(inner, ',')) {
        std::string name{trim(tok)};
        std::size_t c;
        try {
          c = cts.features ? cts.features->condition_mask(name)
                           : cts.conditions->index_of(name);
        } catch (const Error& e) {
          throw ParseError(l->number, e.what());
        }
        guard.set(c);
      }
    if (!cts.guard(x, a, y).empty())
      throw ParseError(l->number, "repeated @edge for the same triple");
    try {
      cts.set_guard(x, a, y, std::move(guard));
    } catch (const GuardNotDownclosed& e) {
      throw ParseError(l->number, e.what());
    }
  }
  m.cts = std::move(cts);
  return m;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

}  // namespace

Model parse_model_text(const std::string& text, const Registry& reg) {
  auto lines = read_lines(text);
  if (lines.empty()) throw ParseError(0, "empty model file");
  bool is_cts = false;
  for (const auto& l : lines)
    if (l.directive == "@conditions" || l.directive == "@features" ||
        l.directive == "@upgrades")
      is_cts = true;
  if (!is_cts)
    for (const auto& l : lines)
      if (l.directive == "@semiring" && reg.defined_poset(l.rest)) is_cts = true;
  return is_cts ? parse_cts(lines, reg) : parse_wa(lines, reg);
}

Model parse_model_file(const std::string& path, const Registry& reg) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str(), reg);
}

std::string print_model(const Model& m) {
  std::ostringstream out;
  if (m.is_wa()) {
    const auto& wa = *m.wa;
    out << "@semiring " << m.semiring_name << "\n";
    out << "@alphabet " << join(wa.alphabet) << "\n";
    out << "@states " << join(wa.states) << "\n";
    for (std::size_t x = 0; x < wa.states.size(); ++x)
      for (std::size_t a = 0; a < wa.alphabet.size(); ++a)
        for (std::size_t y = 0; y < wa.states.size(); ++y) {
          const Value& w = wa.transitions[a].at(x, y);
          if (wa.sr->equal(w, wa.sr->zero())) continue;
          out << "@edge " << wa.states[x] << " " << wa.alphabet[a] << " "
              << wa.states[y] << " " << wa.sr->format(w) << "\n";
        }
    for (std::size_t x = 0; x < wa.states.size(); ++x)
      if (!wa.sr->equal(wa.termination[x], wa.sr->zero()))
        out << "@final " << wa.states[x] << " "
            << wa.sr->format(wa.termination[x]) << "\n";
    return out.str();
  }

  const Cts& c = *m.cts;
  if (!m.semiring_name.empty()) {
    out << "@semiring " << m.semiring_name << "\n";
  } else if (c.features) {
    out << "@features " << join(c.features->base) << "\n";
    if (!c.features->upgrade.empty())
      out << "@upgrades " << join(c.features->upgrade) << "\n";
  } else {
    out << "@conditions " << join(c.conditions->names()) << "\n";
    for (std::size_t j = 0; j < c.conditions->size(); ++j)
      for (std::size_t i = 0; i < c.conditions->size(); ++i)
        if (i != j && c.conditions->le(i, j))
          out << "@le " << c.conditions->names()[i] << " "
              << c.conditions->names()[j] << "\n";
  }
  out << "@alphabet " << join(c.alphabet) << "\n";
  out << "@states " << join(c.states) << "\n";
  for (std::size_t x = 0; x < c.states.size(); ++x)
    for (std::size_t a = 0; a < c.alphabet.size(); ++a)
      for (std::size_t y = 0; y < c.states.size(); ++y) {
        const DenseBitset& g = c.guard(x, a, y);
        if (g.empty()) continue;
        out << "@edge " << c.states[x] << " " << c.alphabet[a] << " "
            << c.states[y] << " {";
        bool first = true;
        for (std::size_t i = 0; i < g.universe(); ++i) {
          if (!g.test(i)) continue;
          if (!first) out << ",";
          out << c.conditions->names()[i];
          first = false;
        }
        out << "}\n";
      }
  return out.str();
}

std::string export_dot(const Model& m) {
  std::ostringstream out;
  out << "digraph model {\n  rankdir=LR;\n";
  if (m.is_wa()) {
    const auto& wa = *m.wa;
    for (std::size_t x = 0; x < wa.states.size(); ++x)
      out << "  \"" << wa.states[x] << "\" [label=\"" << wa.states[x] << " / "
          << wa.sr->format(wa.termination[x]) << "\"];\n";
    for (std::size_t x = 0; x < wa.states.size(); ++x)
      for (std::size_t a = 0; a < wa.alphabet.size(); ++a)
        for (std::size_t y = 0; y < wa.states.size(); ++y) {
          const Value& w = wa.transitions[a].at(x, y);
          if (wa.sr->equal(w, wa.sr->zero())) continue;
          out << "  \"" << wa.states[x] << "\" -> \"" << wa.states[y]
              << "\" [label=\"" << wa.alphabet[a] << ", "
              << wa.sr->format(w) << "\"];\n";
        }
  } else {
    const Cts& c = *m.cts;
    for (const auto& s : c.states)
      out << "  \"" << s << "\" [label=\"" << s << "\"];\n";
    for (std::size_t x = 0; x < c.states.size(); ++x)
      for (std::size_t a = 0; a < c.alphabet.size(); ++a)
        for (std::size_t y = 0; y < c.states.size(); ++y) {
          const DenseBitset& g = c.guard(x, a, y);
          if (g.empty()) continue;
          out << "  \"" << c.states[x] << "\" -> \"" << c.states[y]
              << "\" [label=\"" << c.alphabet[a] << ", {";
          bool first = true;
          for (std::size_t i = 0; i < g.universe(); ++i) {
            if (!g.test(i)) continue;
            if (!first) out << ",";
            out << c.conditions->names()[i];
            first = false;
          }
          out << "}\"];\n";
        }
  }
  out << "}\n";
  return out.str();
}

bool models_equal(const Model& a, const Model& b) {
  if (a.is_wa() != b.is_wa()) return false;
  if (a.semiring_name != b.semiring_name) return false;
  if (a.is_wa()) {
    const auto &x = *a.wa, &y = *b.wa;
    if (x.states != y.states || x.alphabet != y.alphabet) return false;
    if (x.sr->name() != y.sr->name()) return false;
    for (std::size_t s = 0; s < x.states.size(); ++s)
      if (!x.sr->equal(x.termination[s], y.termination[s])) return false;
    for (std::size_t t = 0; t < x.alphabet.size(); ++t)
      for (std::size_t i = 0; i < x.states.size(); ++i)
        for (std::size_t j = 0; j < x.states.size(); ++j)
          if (!x.sr->equal(x.transitions[t].at(i, j),
                           y.transitions[t].at(i, j)))
            return false;
    return true;
  }
  const auto &x = *a.cts, &y = *b.cts;
  if (x.states != y.states || x.alphabet != y.alphabet) return false;
  if (x.conditions->names() != y.conditions->names()) return false;
  for (std::size_t i = 0; i < x.conditions->size(); ++i)
    if (!(x.conditions->down(i) == y.conditions->down(i))) return false;
  if (x.features.has_value() != y.features.has_value()) return false;
  if (x.features && (x.features->base != y.features->base ||
                     x.features->upgrade != y.features->upgrade))
    return false;
  return x.guards == y.guards;
}

}  // namespace wca
