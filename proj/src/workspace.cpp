#include "wca/workspace.hpp"

#include "wca/builtins.hpp"
#include "wca/construct.hpp"
#include "wca/errors.hpp"
#include "wca/model_io.hpp"
#include "wca/tokens.hpp"

#include <json.hpp>

#include <fstream>

namespace wca {

namespace {

using nlohmann::json;

bool is_builtin(const std::string& name) {
  return name == "rational" || name == "boolean" || name == "tropical-nat" ||
         name == "integer";
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (!is_digits(s)) throw Error(std::string(what) + ": expected digits");
  return std::stoull(s);
}

// "kind(inner)" -> inner, or empty when the shape does not match.
std::string inner_of(const std::string& name, const std::string& kind) {
  if (name.size() < kind.size() + 2 || name.compare(0, kind.size(), kind) != 0)
    return "";
  if (name[kind.size()] != '(' || name.back() != ')') return "";
  return name.substr(kind.size() + 1, name.size() - kind.size() - 2);
}

}  // namespace

SemiringPtr Registry::resolve(const std::string& raw) const {
  std::string name{trim(raw)};
  if (name == "rational") return rational_semiring();
  if (name == "boolean") return boolean_semiring();
  if (name == "tropical-nat") return tropical_nat_semiring();
  if (name == "integer") return integer_semiring();
  if (auto inner = inner_of(name, "zmod"); !inner.empty())
    return modulo_ring(parse_u64(std::string{trim(inner)}, "zmod modulus"));
  if (auto inner = inner_of(name, "latticez"); !inner.empty()) {
    auto parts = split_top_level(inner, ',');
    if (parts.size() != 2) throw UnknownSemiring("latticez needs (lo,hi)");
    std::string lo{trim(parts[0])}, hi{trim(parts[1])};
    if (!is_signed_digits(lo) || !is_signed_digits(hi))
      throw UnknownSemiring("latticez bounds must be integers");
    return latticez(std::stoll(lo), std::stoll(hi));
  }
  if (auto inner = inner_of(name, "product"); !inner.empty()) {
    auto parts = split_top_level(inner, ',');
    if (parts.size() != 2)
      throw UnknownSemiring("product needs two components");
    return direct_product(resolve(std::string{parts[0]}),
                          resolve(std::string{parts[1]}));
  }
  auto it = defs_.find(name);
  if (it == defs_.end()) throw UnknownSemiring("unknown semiring '" + name + "'");
  const Definition& d = it->second;
  if (d.kind == "zmod") return modulo_ring(d.modulus);
  if (d.kind == "poset-lattice") return lattice_from_poset(name, *d.poset);
  return direct_product(resolve(d.left), resolve(d.right));
}

const Poset* Registry::defined_poset(const std::string& name) const {
  auto it = defs_.find(std::string{trim(name)});
  if (it == defs_.end() || it->second.kind != "poset-lattice") return nullptr;
  return &*it->second.poset;
}

void Registry::check_new_name(const std::string& name) const {
  if (name.empty() || name.find_first_of(" \t,(){}\"") != std::string::npos)
    throw Error("invalid semiring name '" + name + "'");
  if (is_builtin(name)) throw DuplicateName("'" + name + "' is built in");
  if (defs_.count(name))
    throw DuplicateName("semiring '" + name + "' already defined");
}

void Registry::define_zmod(const std::string& name, std::uint64_t modulus) {
  check_new_name(name);
  modulo_ring(modulus);  // validates the modulus
  Definition d;
  d.kind = "zmod";
  d.modulus = modulus;
  defs_.emplace(name, std::move(d));
}

void Registry::define_lattice(const std::string& name, Poset poset) {
  check_new_name(name);
  Definition d;
  d.kind = "poset-lattice";
  d.poset = std::move(poset);
  defs_.emplace(name, std::move(d));
}

void Registry::define_product(const std::string& name, const std::string& left,
                              const std::string& right) {
  check_new_name(name);
  Definition d;
  d.kind = "product";
  d.left = std::string{trim(left)};
  d.right = std::string{trim(right)};
  defs_.emplace(name, std::move(d));
  // Components must resolve now, not at first use.
  try {
    resolve(name);
  } catch (...) {
    defs_.erase(name);
    throw;
  }
}

void Registry::undefine(const std::string& name) {
  if (!defs_.erase(name))
    throw UnknownSemiring("no defined semiring '" + name + "'");
}

std::set<std::string> Registry::expand(const std::string& raw) const {
  std::set<std::string> out;
  std::string name{trim(raw)};
  if (name.empty()) return out;
  out.insert(name);
  if (auto inner = inner_of(name, "product"); !inner.empty()) {
    auto parts = split_top_level(inner, ',');
    for (const auto& part : parts)
      for (const auto& dep : expand(std::string{part})) out.insert(dep);
    return out;
  }
  auto it = defs_.find(name);
  if (it != defs_.end() && it->second.kind == "product") {
    for (const auto& dep : expand(it->second.left)) out.insert(dep);
    for (const auto& dep : expand(it->second.right)) out.insert(dep);
  }
  return out;
}

Workspace::Workspace(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  auto manifest = dir_ / "manifest.json";
  if (!std::filesystem::exists(manifest)) return;
  std::ifstream in(manifest);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("workspace manifest is not valid JSON: " +
                std::string(e.what()));
  }
  // Products may name other defined semirings, so they are deferred until
  // their components exist; a fixed point handles products of products.
  std::vector<json> products;
  for (const auto& s : j.value("semirings", json::array())) {
    std::string name = s.at("name");
    std::string kind = s.at("kind");
    if (kind == "zmod") {
      reg_.define_zmod(name, s.at("modulus").get<std::uint64_t>());
    } else if (kind == "poset-lattice") {
      std::vector<std::string> elements =
          s.at("elements").get<std::vector<std::string>>();
      std::vector<std::pair<std::string, std::string>> le;
      for (const auto& pair : s.at("le"))
        le.emplace_back(pair.at(0).get<std::string>(),
                        pair.at(1).get<std::string>());
      reg_.define_lattice(name, Poset(std::move(elements), le));
    } else if (kind == "product") {
      products.push_back(s);
    } else {
      throw Error("workspace manifest: unknown semiring kind '" + kind + "'");
    }
  }
  while (!products.empty()) {
    std::size_t before = products.size();
    for (auto it = products.begin(); it != products.end();) {
      try {
        reg_.define_product(it->at("name"), it->at("left"), it->at("right"));
        it = products.erase(it);
      } catch (const UnknownSemiring&) {
        ++it;
      }
    }
    if (products.size() == before)
      throw Error("workspace manifest: product '" +
                  products.front().at("name").get<std::string>() +
                  "' references an unknown semiring");
  }
  for (const auto& m : j.value("models", json::array()))
    models_.push_back({m.at("name"), m.at("file"), m.value("semiring", "")});
}

void Workspace::save() const {
  json j;
  j["semirings"] = json::array();
  for (const auto& [name, d] : reg_.definitions()) {
    json s;
    s["name"] = name;
    s["kind"] = d.kind;
    if (d.kind == "zmod") {
      s["modulus"] = d.modulus;
    } else if (d.kind == "poset-lattice") {
      s["elements"] = d.poset->names();
      json le = json::array();
      for (std::size_t j2 = 0; j2 < d.poset->size(); ++j2)
        for (std::size_t i = 0; i < d.poset->size(); ++i)
          if (i != j2 && d.poset->le(i, j2))
            le.push_back({d.poset->names()[i], d.poset->names()[j2]});
      s["le"] = std::move(le);
    } else {
      s["left"] = d.left;
      s["right"] = d.right;
    }
    j["semirings"].push_back(std::move(s));
  }
  j["models"] = json::array();
  for (const auto& m : models_)
    j["models"].push_back(
        {{"name", m.name}, {"file", m.file}, {"semiring", m.semiring}});
  std::ofstream out(dir_ / "manifest.json");
  out << j.dump(2) << "\n";
}

void Workspace::define_zmod(const std::string& name, std::uint64_t modulus) {
  reg_.define_zmod(name, modulus);
  save();
}

void Workspace::define_lattice(const std::string& name, Poset poset) {
  reg_.define_lattice(name, std::move(poset));
  save();
}

void Workspace::define_product(const std::string& name,
                               const std::string& left,
                               const std::string& right) {
  reg_.define_product(name, left, right);
  save();
}

std::vector<std::string> Workspace::users_of(const std::string& name) const {
  std::vector<std::string> users;
  for (const auto& m : models_)
    if (reg_.expand(m.semiring).count(name))
      users.push_back("model " + m.name);
  for (const auto& [defined, d] : reg_.definitions()) {
    if (defined == name || d.kind != "product") continue;
    auto deps = reg_.expand(defined);
    if (deps.count(name)) users.push_back("semiring " + defined);
  }
  return users;
}

void Workspace::delete_semiring(const std::string& name) {
  if (!reg_.is_defined(name))
    throw UnknownSemiring("no defined semiring '" + name + "'");
  auto users = users_of(name);
  if (!users.empty()) {
    std::string msg = "semiring '" + name + "' is in use by:";
    for (const auto& u : users) msg += " " + u;
    throw Error(msg);
  }
  reg_.undefine(name);
  save();
}

std::filesystem::path Workspace::model_path(const std::string& name) const {
  for (const auto& m : models_)
    if (m.name == name) return dir_ / m.file;
  throw Error("no stored model '" + name + "'");
}

void Workspace::add_model(const std::string& name,
                          const std::string& source_path) {
  if (name.empty() || name.find_first_of(" \t/\\") != std::string::npos)
    throw Error("invalid model name '" + name + "'");
  for (const auto& m : models_)
    if (m.name == name) throw DuplicateName("model '" + name + "' exists");
  Model model = parse_model_file(source_path, reg_);
  std::string file = name + ".model";
  std::ofstream out(dir_ / file);
  out << print_model(model);
  out.close();
  models_.push_back({name, file, model.semiring_name});
  save();
}

void Workspace::remove_model(const std::string& name) {
  for (auto it = models_.begin(); it != models_.end(); ++it)
    if (it->name == name) {
      std::error_code ec;
      std::filesystem::remove(dir_ / it->file, ec);
      models_.erase(it);
      save();
      return;
    }
  throw Error("no stored model '" + name + "'");
}

}  // namespace wca
