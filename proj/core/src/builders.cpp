#include "hvalab/builders.hpp"

#include <algorithm>
#include <cctype>

#include "hvalab/error.hpp"
#include "hvalab/transforms.hpp"

namespace hvalab {

namespace {

void check_base(int m) {
  if (m < 3 || m > 10) throw EncodingError("base must lie in 3..10, got " + std::to_string(m));
}

int digit_value(char c, int m) {
  const int d = c - '0';
  if (d < 1 || d > m - 1) throw EncodingError(std::string("digit '") + c + "' is not in 1.." + std::to_string(m - 1));
  return d;
}

void check_digits(std::string_view x, int m) {
  check_base(m);
  for (char c : x) digit_value(c, m);
}

MachineSpec stateless(Kind kind, Mode mode, bool blind, bool endmarker, std::vector<Symbol> alphabet,
                      RowVector v0) {
  MachineSpec s;
  s.kind = kind;
  s.mode = mode;
  s.blind = blind;
  s.endmarker = endmarker;
  s.realtime = true;
  s.alphabet = std::move(alphabet);
  s.states = {"q"};
  s.initial_state = 0;
  s.accept_states = {0};
  s.dimension = v0.dim();
  s.initial_vector = std::move(v0);
  return s;
}

void add_rule(MachineSpec& s, StateId from, Input in, StateId to, Matrix m,
              StatusPattern status = StatusPattern::wildcard()) {
  s.transitions.push_back(TransitionRule{from, in, std::move(status), to, std::move(m)});
}

MachineSpec dfa_machine(const Dfa& dfa) { return dfa_to_stateless_dbhva(dfa).machine; }

Dfa cycle_dfa(std::size_t m) {
  Dfa d;
  d.alphabet = {'a'};
  d.states = m;
  d.initial = 0;
  d.accepting = {0};
  for (std::size_t q = 0; q < m; ++q) d.delta.push_back({(q + 1) % m});
  return d;
}

MachineSpec pow_r() {
  MachineSpec s;
  s.kind = Kind::HVA;
  s.mode = Mode::Deterministic;
  s.blind = true;
  s.endmarker = true;
  s.alphabet = {'a', 'b'};
  s.states = {"q1", "q2", "q3"};
  s.initial_state = 0;
  s.accept_states = {2};
  s.dimension = 2;
  s.initial_vector = RowVector{1, 1};
  const Matrix a{{1, 0}, {1, 1}};
  const Matrix b{{1, 0}, {0, 2}};
  const Matrix end{{1, 1}, {-1, -1}};
  add_rule(s, 0, Input::of('a'), 0, a);
  add_rule(s, 0, Input::of('b'), 1, b);
  add_rule(s, 1, Input::of('b'), 1, b);
  add_rule(s, 0, Input::end_marker(), 2, end);
  add_rule(s, 1, Input::end_marker(), 2, end);
  return s;
}

MachineSpec ab_star() {
  // H counts a block's a's as 2^i - 1 in entry 2 and halves it back per b
  // in entry 3. H (x) H squares entry 3 into entry 9, which every a adds to
  // the extra entry 10.
  const Matrix ha{{1, 1, 0}, {0, 2, 0}, {0, 0, 0}};
  const Matrix hb{{1, 0, Rational(-1, 2)}, {0, 0, Rational(1, 2)}, {0, 0, Rational(1, 2)}};
  Matrix a = direct_sum(tensor(ha, ha), Matrix::scalar(1));
  a(8, 9) = 1;
  const Matrix b = direct_sum(tensor(hb, hb), Matrix::scalar(1));
  RowVector v0(10);
  v0[0] = 1;
  MachineSpec s = stateless(Kind::HVA, Mode::Deterministic, true, false, {'a', 'b'}, v0);
  add_rule(s, 0, Input::of('a'), 0, a);
  add_rule(s, 0, Input::of('b'), 0, b);
  return s;
}

MachineSpec ab_k_star(int k) {
  const std::size_t n = 2 * static_cast<std::size_t>(k);
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
    a(i, i + 1) = 1;
    b(k + i, (k + i + 1) % n) = 1;
  }
  RowVector v0(n);
  v0[0] = 1;
  MachineSpec s = stateless(Kind::HVA, Mode::Deterministic, true, false, {'a', 'b'}, v0);
  add_rule(s, 0, Input::of('a'), 0, a);
  add_rule(s, 0, Input::of('b'), 0, b);
  return s;
}

MachineSpec one_dim(Mode mode, const std::vector<std::pair<char, Rational>>& moves) {
  MachineSpec s = stateless(Kind::HVA, mode, true, false, {}, RowVector{1});
  for (const auto& [c, m] : moves) {
    if (!s.in_alphabet(c)) s.alphabet.push_back(c);
    add_rule(s, 0, Input::of(c), 0, Matrix::scalar(m));
  }
  return s;
}

MachineSpec dyck() {
  MachineSpec s = stateless(Kind::HVA, Mode::Deterministic, false, false, {'(', ')'}, RowVector{1});
  add_rule(s, 0, Input::of('('), 0, Matrix::scalar(2));
  add_rule(s, 0, Input::of(')'), 0, Matrix::scalar(Rational(1, 2)), StatusPattern::ne());
  add_rule(s, 0, Input::of(')'), 0, Matrix::scalar(0), StatusPattern::eq());
  return s;
}

MachineSpec mod_rot(int m) {
  Matrix r;
  switch (m) {
    case 1: r = Matrix{{1, 0}, {0, 1}}; break;
    case 2: r = Matrix{{-1, 0}, {0, -1}}; break;
    case 4: r = Matrix{{0, -1}, {1, 0}}; break;
    default:
      throw BuilderError("MOD_ROT(m) needs rational cos/sin of 2*pi/m: m must be 1, 2 or 4, got " +
                         std::to_string(m));
  }
  MachineSpec s = stateless(Kind::HVA, Mode::Deterministic, true, false, {'a'}, RowVector{1, 0});
  add_rule(s, 0, Input::of('a'), 0, r);
  return s;
}

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::string reversed(std::string_view s) { return std::string(s.rbegin(), s.rend()); }

std::vector<Symbol> digit_alphabet(int m) {
  check_base(m);
  std::vector<Symbol> out;
  for (int d = 1; d < m; ++d) out.push_back(static_cast<char>('0' + d));
  return out;
}

Matrix digit_matrix(int digit, int m) { return Matrix{{1, digit}, {0, m}}; }

BigInt encode_base(std::string_view x, int m) {
  check_digits(x, m);
  BigInt value = 0;
  BigInt place = 1;
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    value += place * digit_value(*it, m);
    place *= m;
  }
  return value;
}

BigInt encode_base_by_matrices(std::string_view x, int m) {
  check_digits(x, m);
  RowVector v{1, 0};
  for (char c : x) v = vec_mat_mul(v, digit_matrix(digit_value(c, m), m));
  return v[1].numerator();
}

MachineSpec unary_distinguisher(unsigned i) {
  MachineSpec s = stateless(Kind::VA, Mode::Deterministic, true, true, {'a', 'b'}, RowVector{Rational(2).pow(i)});
  add_rule(s, 0, Input::of('a'), 0, Matrix::scalar(Rational(1, 2)));
  add_rule(s, 0, Input::of('b'), 0, Matrix::scalar(0));
  add_rule(s, 0, Input::end_marker(), 0, Matrix::scalar(1));
  return s;
}

MachineSpec binary_distinguisher(std::string_view x, int m) {
  if (x.empty()) throw BuilderError("binary_distinguisher needs a nonempty string");
  const Rational e(encode_base(reversed(x), m));
  MachineSpec s = stateless(Kind::VA, Mode::Deterministic, true, true, digit_alphabet(m), RowVector{1, e});
  for (int d = 1; d < m; ++d) add_rule(s, 0, Input::of(static_cast<char>('0' + d)), 0, inverse(digit_matrix(d, m)));
  add_rule(s, 0, Input::end_marker(), 0, Matrix{{1, e}, {1, 0}});
  return s;
}

MachineSpec finite_language_va(const std::set<std::string>& words, int m) {
  if (words.empty()) throw BuilderError("finite_language_va needs at least one word");
  if (words.count("")) throw BuilderError("finite_language_va cannot accept the empty string");
  if (words.size() > 10) throw BuilderError("finite_language_va: 2^|X| + 1 dimensions; |X| is capped at 10");

  RowVector tail{1};
  for (const auto& x : words) tail = tensor_vec(tail, RowVector{1, Rational(encode_base(reversed(x), m))});
  const std::size_t n = tail.dim() + 1;

  const Matrix one = Matrix::scalar(1);
  const Matrix a0{{0, 0}, {1, 0}};
  Matrix zeroed = one;
  for (std::size_t i = 0; i < words.size(); ++i) zeroed = tensor(zeroed, a0);
  const Matrix end1 = direct_sum(one, zeroed);
  Matrix end2(n, n);
  end2(0, 0) = 1;
  end2(1, 0) = 1;
  for (std::size_t j = 0; j < tail.dim(); ++j) end2(0, j + 1) = tail[j];

  MachineSpec s = stateless(Kind::VA, Mode::Deterministic, true, true, digit_alphabet(m), concat(RowVector{1}, tail));
  for (int d = 1; d < m; ++d) {
    const Matrix inv = inverse(digit_matrix(d, m));
    Matrix block = one;
    for (std::size_t i = 0; i < words.size(); ++i) block = tensor(block, inv);
    add_rule(s, 0, Input::of(static_cast<char>('0' + d)), 0, direct_sum(one, block));
  }
  add_rule(s, 0, Input::end_marker(), 0, mat_mul(end1, end2));
  return s;
}

MachineSpec hva_distinguisher(std::string_view x, int m) {
  if (x.empty()) throw BuilderError("hva_distinguisher needs a nonempty string");
  check_digits(x, m);
  Matrix encode_reversed = Matrix::identity(2);
  for (auto it = x.rbegin(); it != x.rend(); ++it) encode_reversed = mat_mul(encode_reversed, digit_matrix(*it - '0', m));

  MachineSpec s;
  s.kind = Kind::HVA;
  s.mode = Mode::Deterministic;
  s.blind = true;
  s.endmarker = false;
  s.alphabet = digit_alphabet(m);
  s.states = {"q1", "q2"};
  s.initial_state = 0;
  s.accept_states = {1};
  s.dimension = 2;
  s.initial_vector = RowVector{1, 0};
  for (int d = 1; d < m; ++d) {
    const Matrix inv = inverse(digit_matrix(d, m));
    add_rule(s, 0, Input::of(static_cast<char>('0' + d)), 1, mat_mul(encode_reversed, inv));
    add_rule(s, 1, Input::of(static_cast<char>('0' + d)), 1, inv);
  }
  return s;
}

MachineSpec finite_language_nbhva_endmarker(const std::set<std::string>& words, int m) {
  if (words.empty()) throw BuilderError("finite_language_nbhva needs at least one word");
  MachineSpec s = stateless(Kind::HVA, Mode::Nondeterministic, true, true, digit_alphabet(m), RowVector{1, 0});
  for (int d = 1; d < m; ++d) add_rule(s, 0, Input::of(static_cast<char>('0' + d)), 0, digit_matrix(d, m));
  for (const auto& x : words) {
    const Rational e(encode_base(x, m));
    add_rule(s, 0, Input::end_marker(), 0, Matrix{{1, -e}, {0, 1}});
  }
  return s;
}

MachineSpec finite_language_nbhva(const std::set<std::string>& words, int m) {
  return remove_endmarker(finite_language_nbhva_endmarker(words, m)).machine;
}

std::string ExampleName::to_string() const {
  switch (id) {
    case Id::PowR: return "POW_r";
    case Id::AbStar: return "AB_STAR";
    case Id::Mod: return "MOD(" + std::to_string(param) + ")";
    case Id::ModRot: return "MOD_ROT(" + std::to_string(param) + ")";
    case Id::AbKStar: return "AB_K_STAR(" + std::to_string(param) + ")";
    case Id::Eq: return "EQ";
    case Id::Leq: return "LEQ";
    case Id::Dyck: return "DYCK";
    case Id::EvenAb: return "EVENAB";
    case Id::LEpsilon: return "L_EPSILON";
    case Id::UnaryPoint: return "UNARY_POINT(" + std::to_string(param) + ")";
  }
  return "?";
}

std::optional<ExampleName> ExampleName::parse(std::string_view text) {
  std::string s = upper(text);
  std::string head = s;
  std::optional<int> param;
  const auto open = s.find_first_of("(: ");
  if (open != std::string::npos) {
    head = s.substr(0, open);
    std::string rest = s.substr(open + 1);
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    try {
      std::size_t used = 0;
      param = std::stoi(rest, &used);
      if (used != rest.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  head.erase(std::remove(head.begin(), head.end(), '-'), head.end());
  head.erase(std::remove(head.begin(), head.end(), '_'), head.end());

  struct Entry {
    const char* name;
    Id id;
    bool takes_param;
  };
  static constexpr Entry table[] = {
      {"POWR", Id::PowR, false},     {"ABSTAR", Id::AbStar, false},  {"MOD", Id::Mod, true},
      {"MODROT", Id::ModRot, true},  {"ABKSTAR", Id::AbKStar, true}, {"EQ", Id::Eq, false},
      {"LEQ", Id::Leq, false},       {"DYCK", Id::Dyck, false},      {"EVENAB", Id::EvenAb, false},
      {"LEPSILON", Id::LEpsilon, false}, {"UNARYPOINT", Id::UnaryPoint, true},
  };
  for (const auto& e : table) {
    if (head != e.name) continue;
    if (e.takes_param != param.has_value()) return std::nullopt;
    return ExampleName{e.id, param.value_or(0)};
  }
  return std::nullopt;
}

MachineSpec example(const ExampleName& name) {
  using Id = ExampleName::Id;
  switch (name.id) {
    case Id::PowR:
      return pow_r();
    case Id::AbStar:
      return ab_star();
    case Id::Mod:
      if (name.param < 1) throw BuilderError("MOD(m) needs m >= 1");
      return dfa_machine(cycle_dfa(static_cast<std::size_t>(name.param)));
    case Id::ModRot:
      return mod_rot(name.param);
    case Id::AbKStar:
      if (name.param < 2) throw BuilderError("AB_K_STAR(k) needs k > 1");
      return ab_k_star(name.param);
    case Id::Eq:
      return one_dim(Mode::Deterministic, {{'a', Rational(2)}, {'b', Rational(1, 2)}});
    case Id::Leq:
      return one_dim(Mode::Nondeterministic, {{'a', Rational(2)}, {'b', Rational(1, 2)}, {'b', Rational(1)}});
    case Id::Dyck:
      return dyck();
    case Id::EvenAb:
      return one_dim(Mode::Deterministic, {{'a', Rational(-2)}, {'b', Rational(1, 2)}});
    case Id::LEpsilon:
      return one_dim(Mode::Deterministic, {{'a', Rational(1, 2)}, {'b', Rational(0)}});
    case Id::UnaryPoint:
      if (name.param < 0) throw BuilderError("UNARY_POINT(i) needs i >= 0");
      return unary_distinguisher(static_cast<unsigned>(name.param));
  }
  throw BuilderError("unknown example");
}

}  // namespace hvalab
