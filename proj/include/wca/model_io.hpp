// Line-oriented model files for weighted automata and conditional
// transition systems, their canonical printer, and DOT export.

#ifndef WCA_MODEL_IO_HPP
#define WCA_MODEL_IO_HPP

#include "wca/cts.hpp"
#include "wca/wa.hpp"

#include <optional>
#include <string>

namespace wca {

class Registry;

struct Model {
  // The @semiring name as written; empty for a CTS with inline conditions.
  std::string semiring_name;
  std::optional<WeightedAutomaton> wa;
  std::optional<Cts> cts;

  bool is_wa() const { return wa.has_value(); }
};

Model parse_model_text(const std::string& text, const Registry& reg);
Model parse_model_file(const std::string& path, const Registry& reg);

// Canonical form: header directives, then nonzero @edge lines in state,
// symbol, target order, then nonzero @final lines. parse(print(m)) == m.
std::string print_model(const Model& m);

std::string export_dot(const Model& m);

bool models_equal(const Model& a, const Model& b);

}  // namespace wca

#endif
