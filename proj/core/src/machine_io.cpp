#include "hvalab/machine_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hvalab/error.hpp"

namespace hvalab {

namespace {

using Json = nlohmann::ordered_json;

// --- writing ---------------------------------------------------------------

Json scalar_json(const Rational& r) { return r.to_string(); }

Json vector_json(const RowVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json status_json(const MachineSpec& spec, const StatusPattern& p) {
  if (p.is_wildcard()) return "*";
  if (spec.kind != Kind::CounterMachine) return std::string(to_string(p.tests.front()));
  Json out = Json::array();
  for (Test t : p.tests) out.push_back(std::string(to_string(t)));
  return out;
}

std::string symbol_string(Symbol c) { return std::string(1, c); }

// --- parsing ---------------------------------------------------------------

class Reader {
 public:
  explicit Reader(const Json& root) : root_(root) {}

  MachineSpec machine() {
    expect_object(root_, "");
    static const std::set<std::string> known{"kind", "mode", "blind", "endmarker", "realtime", "alphabet", "states",
                                             "initial_state", "accept_states", "dimension", "initial_vector",
                                             "transitions", "gfa_final_vector", "gfa_cutpoint"};
    reject_unknown(root_, "", known);

    MachineSpec s;
    const auto kind = parse_kind(string_at(required("kind"), "kind"));
    if (!kind) fail("kind", "unknown kind '" + root_["kind"].get<std::string>() + "'");
    s.kind = *kind;
    if (root_.contains("mode")) {
      const auto mode = parse_mode(string_at(root_["mode"], "mode"));
      if (!mode) fail("mode", "unknown mode '" + root_["mode"].get<std::string>() + "'");
      s.mode = *mode;
    }
    s.blind = flag("blind", true);
    s.endmarker = flag("endmarker", false);
    s.realtime = flag("realtime", true);

    const Json& alphabet = required("alphabet");
    expect_array(alphabet, "alphabet");
    for (std::size_t i = 0; i < alphabet.size(); ++i) s.alphabet.push_back(symbol_at(alphabet[i], index("alphabet", i)));

    const Json& states = required("states");
    expect_array(states, "states");
    for (std::size_t i = 0; i < states.size(); ++i) s.states.push_back(string_at(states[i], index("states", i)));

    s.initial_state = state_at(s, required("initial_state"), "initial_state");
    const Json& accept = required("accept_states");
    expect_array(accept, "accept_states");
    for (std::size_t i = 0; i < accept.size(); ++i)
      s.accept_states.push_back(state_at(s, accept[i], index("accept_states", i)));

    const Json& dim = required("dimension");
    if (!dim.is_number_unsigned()) fail("dimension", "expected a nonnegative integer");
    s.dimension = dim.get<std::size_t>();
    s.initial_vector = vector_at(required("initial_vector"), "initial_vector");

    const Json& rules = required("transitions");
    expect_array(rules, "transitions");
    for (std::size_t i = 0; i < rules.size(); ++i) s.transitions.push_back(rule_at(s, rules[i], index("transitions", i)));

    if (root_.contains("gfa_final_vector")) s.gfa_final_vector = vector_at(root_["gfa_final_vector"], "gfa_final_vector");
    if (root_.contains("gfa_cutpoint")) s.gfa_cutpoint = scalar_at(root_["gfa_cutpoint"], "gfa_cutpoint");
    return s;
  }

  DiophantineSystem system() {
    expect_object(root_, "");
    reject_unknown(root_, "", {"alphabet", "coefficients"});
    DiophantineSystem sys;
    const Json& alphabet = required("alphabet");
    expect_array(alphabet, "alphabet");
    for (std::size_t i = 0; i < alphabet.size(); ++i) sys.alphabet.push_back(symbol_at(alphabet[i], index("alphabet", i)));
    const Json& rows = required("coefficients");
    expect_array(rows, "coefficients");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const std::string where = index("coefficients", j);
      expect_array(rows[j], where);
      if (rows[j].size() != sys.alphabet.size())
        fail(where, "expected " + std::to_string(sys.alphabet.size()) + " coefficients");
      std::vector<long> row;
      for (std::size_t i = 0; i < rows[j].size(); ++i) {
        if (!rows[j][i].is_number_integer()) fail(index(where, i), "expected an integer");
        row.push_back(rows[j][i].get<long>());
      }
      sys.coefficients.push_back(std::move(row));
    }
    return sys;
  }

 private:
  [[noreturn]] static void fail(const std::string& where, const std::string& what) { throw ParseError(where, what); }

  static std::string index(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
  static std::string field(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
  }

  static void expect_object(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where.empty() ? "document" : where, "expected an object");
  }
  static void expect_array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
  }
  static void reject_unknown(const Json& j, const std::string& where, const std::set<std::string>& known) {
    for (const auto& [key, _] : j.items())
      if (!known.count(key)) fail(field(where, key), "unknown field");
  }

  const Json& required(const std::string& key) const {
    if (!root_.contains(key)) fail(key, "missing required field");
    return root_[key];
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!root_.contains(key)) return fallback;
    if (!root_[key].is_boolean()) fail(key, "expected true or false");
    return root_[key].get<bool>();
  }

  static std::string string_at(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
  }

  static Symbol symbol_at(const Json& j, const std::string& where) {
    const std::string s = string_at(j, where);
    if (s.size() != 1 || s[0] < 0x21 || s[0] > 0x7e) fail(where, "symbols are single printable characters");
    if (s == "$") fail(where, "'$' is reserved for the end-marker");
    return s[0];
  }

  static StateId state_at(const MachineSpec& s, const Json& j, const std::string& where) {
    const std::string name = string_at(j, where);
    const auto q = s.find_state(name);
    if (!q) fail(where, "unknown state '" + name + "'");
    return *q;
  }

  static Rational scalar_at(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(where, "expected a rational \"p/q\" or an integer");
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }

  static RowVector vector_at(const Json& j, const std::string& where) {
    expect_array(j, where);
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_at(j[i], index(where, i)));
    return RowVector(std::move(out));
  }

  static Matrix matrix_at(const Json& j, const std::string& where) {
    expect_array(j, where);
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    std::vector<Rational> data;
    for (std::size_t r = 0; r < rows; ++r) {
      const RowVector row = vector_at(j[r], index(where, r));
      if (r == 0) cols = row.dim();
      else if (row.dim() != cols) fail(index(where, r), "ragged matrix row");
      data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(rows, cols, std::move(data));
  }

  static Test test_at(const Json& j, const std::string& where) {
    const std::string t = string_at(j, where);
    if (t == "=") return Test::Eq;
    if (t == "!=") return Test::Ne;
    if (t == "*") return Test::Any;
    fail(where, "status must be \"=\", \"!=\" or \"*\"");
  }

  static TransitionRule rule_at(const MachineSpec& s, const Json& j, const std::string& where) {
    expect_object(j, where);
    reject_unknown(j, where, {"from", "input", "status", "to", "matrix", "update"});
    const auto need = [&](const char* key) -> const Json& {
      if (!j.contains(key)) fail(field(where, key), "missing required field");
      return j[key];
    };

    TransitionRule r;
    r.from = state_at(s, need("from"), field(where, "from"));
    r.to = state_at(s, need("to"), field(where, "to"));

    const std::string input = string_at(need("input"), field(where, "input"));
    if (input == "eps") r.input = Input::epsilon();
    else if (input == "$") r.input = Input::end_marker();
    else r.input = Input::of(symbol_at(j["input"], field(where, "input")));

    if (j.contains("status")) {
      const Json& st = j["status"];
      const std::string sw = field(where, "status");
      if (st.is_array()) {
        for (std::size_t i = 0; i < st.size(); ++i) r.status.tests.push_back(test_at(st[i], index(sw, i)));
        if (std::all_of(r.status.tests.begin(), r.status.tests.end(), [](Test t) { return t == Test::Any; }))
          r.status = StatusPattern::wildcard();
      } else {
        const Test t = test_at(st, sw);
        if (t != Test::Any) r.status.tests.push_back(t);
      }
    }

    const bool has_matrix = j.contains("matrix"), has_update = j.contains("update");
    if (has_matrix == has_update) fail(where, "a rule carries exactly one of \"matrix\" or \"update\"");
    if (has_matrix) {
      r.effect = matrix_at(j["matrix"], field(where, "matrix"));
    } else {
      const Json& u = j["update"];
      const std::string uw = field(where, "update");
      expect_array(u, uw);
      CounterUpdate update;
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!u[i].is_number_integer()) fail(index(uw, i), "expected an integer");
        update.push_back(u[i].get<int>());
      }
      r.effect = std::move(update);
    }
    return r;
  }

  const Json& root_;
};

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
}

}  // namespace

std::string write_machine(const MachineSpec& spec) {
  std::ostringstream out;
  const auto line = [&out](const char* key, const Json& value, bool last = false) {
    out << "  \"" << key << "\": " << value.dump() << (last ? "\n" : ",\n");
  };

  Json alphabet = Json::array();
  for (Symbol c : spec.alphabet) alphabet.push_back(symbol_string(c));
  Json accept = Json::array();
  for (StateId q : spec.accept_states) accept.push_back(spec.states.at(q));

  out << "{\n";
  line("kind", std::string(to_string(spec.kind)));
  line("mode", std::string(to_string(spec.mode)));
  line("blind", spec.blind);
  line("endmarker", spec.endmarker);
  line("realtime", spec.realtime);
  line("alphabet", alphabet);
  line("states", Json(spec.states));
  line("initial_state", spec.states.at(spec.initial_state));
  line("accept_states", accept);
  line("dimension", spec.dimension);
  line("initial_vector", vector_json(spec.initial_vector));
  if (spec.gfa_final_vector) line("gfa_final_vector", vector_json(*spec.gfa_final_vector));
  if (spec.gfa_cutpoint) line("gfa_cutpoint", scalar_json(*spec.gfa_cutpoint));

  out << "  \"transitions\": [";
  for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
    const auto& r = spec.transitions[i];
    Json rule;
    rule["from"] = spec.states.at(r.from);
    rule["input"] = r.input.to_string();
    rule["status"] = status_json(spec, r.status);
    rule["to"] = spec.states.at(r.to);
    if (std::holds_alternative<Matrix>(r.effect)) rule["matrix"] = matrix_json(r.matrix());
    else rule["update"] = Json(r.update());
    out << (i ? ",\n    " : "\n    ") << rule.dump();
  }
  out << (spec.transitions.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return out.str();
}

MachineSpec parse_machine(std::string_view text) {
  const Json root = parse_json(text);
  return Reader(root).machine();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MachineSpec read_machine_file(const std::filesystem::path& path) { return parse_machine(read_text_file(path)); }

void write_machine_file(const std::filesystem::path& path, const MachineSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << write_machine(spec);
}

std::string write_system(const DiophantineSystem& sys) {
  Json alphabet = Json::array();
  for (Symbol c : sys.alphabet) alphabet.push_back(symbol_string(c));
  std::ostringstream out;
  out << "{\n  \"alphabet\": " << alphabet.dump() << ",\n  \"coefficients\": [";
  for (std::size_t j = 0; j < sys.coefficients.size(); ++j)
    out << (j ? ",\n    " : "\n    ") << Json(sys.coefficients[j]).dump();
  out << (sys.coefficients.empty() ? "]\n" : "\n  ]\n") << "}\n";
  return out.str();
}

DiophantineSystem parse_system(std::string_view text) {
  const Json root = parse_json(text);
  return Reader(root).system();
}

DiophantineSystem read_system_file(const std::filesystem::path& path) { return parse_system(read_text_file(path)); }

}  // namespace hvalab
