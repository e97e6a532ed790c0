#include "hvalab/transforms.hpp"

#include <algorithm>

#include "hvalab/primes.hpp"

namespace hvalab {

namespace {

TransformReport report(std::string name, const MachineSpec& in, const MachineSpec& out,
                       std::map<std::string, std::string> params = {}) {
  return {std::move(name), MachineSummary::of(in), MachineSummary::of(out), std::move(params)};
}

std::string fresh_state_name(const MachineSpec& spec, const std::string& base) {
  std::string name = base;
  for (int i = 1; spec.find_state(name); ++i) name = base + std::to_string(i);
  return name;
}

void require(bool ok, const std::string& pass, const std::string& what) {
  if (!ok) throw UnsupportedPassError(pass + ": " + what);
}

void push_unique(std::vector<TransitionRule>& rules, TransitionRule r) {
  if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(std::move(r));
}

std::vector<Matrix> all_matrices(const MachineSpec& spec) {
  std::vector<Matrix> ms;
  for (const auto& r : spec.transitions) ms.push_back(r.matrix());
  return ms;
}

}  // namespace

Transformed scale_initial_vector(const MachineSpec& spec, const Rational& t) {
  if (t.is_zero()) throw InvalidScalarError("scale_initial_vector: t must be nonzero");
  require(spec.kind == Kind::HVA, "scale-initial-vector", "needs an HVA");
  MachineSpec out = spec;
  std::vector<Rational> e;
  for (const auto& x : spec.initial_vector) e.push_back(x * t);
  out.initial_vector = RowVector(std::move(e));
  return {out, {report("scale-initial-vector", spec, out, {{"t", t.to_string()}})}};
}

Transformed remove_endmarker(const MachineSpec& spec, const SearchBudget& budget) {
  const std::string pass = "remove-endmarker";
  require(spec.kind == Kind::HVA, pass, "needs an HVA");
  require(spec.blind, pass, "only blind machines are supported");
  require(spec.endmarker, pass, "machine does not use an end-marker");

  const bool accepts_empty = accepts(spec, "", budget);

  // A fused move may share its letter with an ordinary one.
  MachineSpec out = spec;
  out.mode = Mode::Nondeterministic;
  out.endmarker = false;
  out.transitions.clear();
  const StateId accept = out.states.size();
  out.states.push_back(fresh_state_name(spec, "acc"));

  for (const auto& r : spec.transitions) {
    if (!r.input.is_end_marker()) push_unique(out.transitions, r);
  }
  // sigma followed by $ into an accept state becomes one move into `accept`.
  for (const auto& r : spec.transitions) {
    if (r.input.is_end_marker()) continue;
    for (const auto& fin : spec.transitions) {
      if (!fin.input.is_end_marker() || fin.from != r.to || !spec.is_accepting(fin.to)) continue;
      push_unique(out.transitions,
                  TransitionRule{r.from, r.input, StatusPattern::wildcard(), accept, mat_mul(r.matrix(), fin.matrix())});
    }
  }
  out.accept_states = {accept};

  if (accepts_empty) {
    const StateId start = out.states.size();
    out.states.push_back(fresh_state_name(out, "init"));
    const auto inherited = out.transitions;
    for (const auto& r : inherited) {
      if (r.from != spec.initial_state) continue;
      TransitionRule copy = r;
      copy.from = start;
      push_unique(out.transitions, std::move(copy));
    }
    out.initial_state = start;
    out.accept_states.push_back(start);
  }
  return {out, {report(pass, spec, out, {{"accepts_empty", accepts_empty ? "true" : "false"}})}};
}

Matrix integer_border(const Matrix& a, const BigInt& c) {
  return direct_sum(direct_sum(a.scaled(Rational(c)), Matrix::scalar(Rational(c))), Matrix::scalar(1));
}

Matrix integer_postprocess(const RowVector& v0) {
  const std::size_t k = v0.dim();
  Matrix p(k + 2, k + 2);
  for (std::size_t i = 0; i < k; ++i) p(i, i) = -1;
  for (std::size_t j = 0; j < k; ++j) {
    p(k, j) = v0[j];
    p(k + 1, j) = v0[j];
  }
  p(k + 1, k) = 1;
  p(k + 1, k + 1) = 1;
  return p;
}

Transformed rationals_to_integers(const MachineSpec& spec) {
  const std::string pass = "rationals-to-integers";
  require(spec.kind == Kind::HVA, pass, "needs an HVA");
  require(spec.blind, pass, "only blind machines are supported");
  require(spec.endmarker, pass, "the construction needs the end-marker post-processing step");

  Transformed result{spec, {}};
  if (!spec.initial_vector.is_integer()) {
    BigInt t = 1;
    for (const auto& x : spec.initial_vector) t = lcm(t, x.denominator());
    result = scale_initial_vector(spec, Rational(t));
  }
  const MachineSpec& src = result.machine;
  const auto mats = all_matrices(src);
  const BigInt c = common_denominator_scalar(mats);
  const Matrix post = integer_postprocess(src.initial_vector);

  MachineSpec out = src;
  out.dimension = src.dimension + 2;
  out.initial_vector = concat(src.initial_vector, RowVector{Rational(1), Rational(1)});
  for (auto& r : out.transitions) {
    Matrix bordered = integer_border(r.matrix(), c);
    r.effect = r.input.is_end_marker() ? mat_mul(bordered, post) : std::move(bordered);
  }
  result.reports.push_back(report(pass, src, out, {{"c", c.get_str()}}));
  result.machine = std::move(out);
  return result;
}

MachineSpec zero_nonaccepting_endmarker_rules(const MachineSpec& spec) {
  MachineSpec out = spec;
  for (auto& r : out.transitions) {
    if (r.input.is_end_marker() && !spec.is_accepting(r.to)) r.effect = Matrix::zero(spec.dimension, spec.dimension);
  }
  return out;
}

Transformed eliminate_states(const MachineSpec& spec) {
  const std::string pass = "eliminate-states";
  require(spec.kind == Kind::VA, pass, "needs a VA");
  require(spec.mode == Mode::Deterministic, pass, "only deterministic machines are supported");
  require(spec.endmarker, pass, "the VA must read the end-marker");

  const MachineSpec src = zero_nonaccepting_endmarker_rules(spec);
  const std::size_t n = src.states.size();
  const std::size_t k = src.dimension;
  const std::size_t big = n * k + 1;
  auto offset = [k](StateId q) { return 1 + q * k; };

  MachineSpec out;
  out.kind = Kind::VA;
  out.mode = Mode::Deterministic;
  out.blind = src.blind;
  out.endmarker = true;
  out.realtime = true;
  out.alphabet = src.alphabet;
  out.states = {"q"};
  out.initial_state = 0;
  out.accept_states = {0};
  out.dimension = big;
  out.initial_vector = RowVector(big);
  out.initial_vector[0] = src.initial_vector[0];
  for (std::size_t j = 0; j < k; ++j) out.initial_vector[offset(src.initial_state) + j] = src.initial_vector[j];

  std::vector<Input> inputs;
  for (Symbol s : src.alphabet) inputs.push_back(Input::of(s));
  inputs.push_back(Input::end_marker());
  const std::vector<StatusPattern> statuses =
      src.blind ? std::vector<StatusPattern>{StatusPattern::wildcard()}
                : std::vector<StatusPattern>{StatusPattern::eq(), StatusPattern::ne()};

  for (Input in : inputs) {
    for (const auto& tau : statuses) {
      Matrix b(big, big);
      for (StateId q = 0; q < n; ++q) {
        for (const auto& r : src.transitions) {
          if (r.from != q || r.input != in) continue;
          if (!tau.is_wildcard() && !r.status.matches(tau)) continue;
          const Matrix& a = r.matrix();
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) b(offset(q) + i, offset(r.to) + j) = a(i, j);
          break;
        }
      }
      // Entry 0 becomes the sum of the (q, 1) entries.
      for (std::size_t row = 0; row < big; ++row) {
        Rational sum;
        for (StateId q = 0; q < n; ++q) sum += b(row, offset(q));
        b(row, 0) = sum;
      }
      out.transitions.push_back(TransitionRule{0, in, tau, 0, std::move(b)});
    }
  }
  return {out, {report(pass, spec, out, {{"n", std::to_string(n)}, {"k", std::to_string(k)}})}};
}

Transformed counters_to_hva1(const MachineSpec& spec) {
  const std::string pass = "counters-to-hva1";
  require(spec.kind == Kind::CounterMachine, pass, "needs a counter machine");
  require(spec.blind, pass, "zero tests cannot be encoded; the counter machine must be blind");

  MachineSpec out = spec;
  out.kind = Kind::HVA;
  out.dimension = 1;
  out.initial_vector = RowVector{Rational(1)};
  std::string primes;
  for (std::size_t i = 0; i < spec.dimension; ++i) primes += (i ? "," : "") + std::to_string(nth_prime(i));
  for (auto& r : out.transitions) {
    Rational m(1);
    const auto& u = r.update();
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != 0) m *= Rational(static_cast<long>(nth_prime(i))).pow(u[i]);
    }
    r.effect = Matrix::scalar(m);
  }
  return {out, {report(pass, spec, out, {{"primes", primes}})}};
}

Transformed counters_to_integer_hva3(const MachineSpec& spec, const SearchBudget& budget) {
  Transformed stage = counters_to_hva1(spec);
  std::vector<TransformReport> reports = stage.reports;

  MachineSpec with_end = stage.machine;
  with_end.mode = Mode::Nondeterministic;
  if (!with_end.endmarker) {
    with_end.endmarker = true;
    for (StateId q : with_end.accept_states)
      with_end.transitions.push_back(
          TransitionRule{q, Input::end_marker(), StatusPattern::wildcard(), q, Matrix::identity(1)});
  }
  reports.push_back(report("attach-endmarker", stage.machine, with_end));

  stage = rationals_to_integers(with_end);
  reports.insert(reports.end(), stage.reports.begin(), stage.reports.end());
  stage = remove_endmarker(stage.machine, budget);
  reports.insert(reports.end(), stage.reports.begin(), stage.reports.end());
  return {std::move(stage.machine), std::move(reports)};
}

Transformed dfa_to_stateless_dbhva(const Dfa& dfa) {
  const std::string pass = "dfa-to-stateless-dbhva";
  require(dfa.accepting.size() == 1 && dfa.accepting.front() == dfa.initial, pass,
          "the initial state must be the only accept state");
  require(dfa.initial < dfa.states && dfa.delta.size() == dfa.states, pass, "malformed transition table");
  const std::size_t n = dfa.states;
  // The initial state becomes basis vector e_1.
  auto index = [&](std::size_t q) { return q == dfa.initial ? 0 : (q < dfa.initial ? q + 1 : q); };

  MachineSpec out;
  out.kind = Kind::HVA;
  out.mode = Mode::Deterministic;
  out.blind = true;
  out.endmarker = false;
  out.realtime = true;
  out.alphabet = dfa.alphabet;
  out.states = {"q"};
  out.accept_states = {0};
  out.dimension = n;
  out.initial_vector = RowVector(n);
  out.initial_vector[0] = 1;
  for (std::size_t s = 0; s < dfa.alphabet.size(); ++s) {
    Matrix a(n, n);
    for (std::size_t q = 0; q < n; ++q) {
      require(dfa.delta[q].size() == dfa.alphabet.size(), pass, "malformed transition table");
      if (const auto& to = dfa.delta[q][s]) a(index(q), index(*to)) = 1;
    }
    out.transitions.push_back(TransitionRule{0, Input::of(dfa.alphabet[s]), StatusPattern::wildcard(), 0, a});
  }
  // The source is a plain DFA; its summary records the state count only.
  TransformReport rep{pass, MachineSummary{Kind::HVA, n, 0}, MachineSummary::of(out), {{"source", "dfa"}}};
  return {out, {std::move(rep)}};
}

Transformed intersect_blind_hva(const MachineSpec& a, const MachineSpec& b) {
  const std::string pass = "intersect";
  for (const auto* m : {&a, &b}) {
    require(m->kind == Kind::HVA, pass, "needs HVAs");
    require(m->mode == Mode::Deterministic && m->blind, pass, "needs deterministic blind machines");
  }
  if (a.alphabet != b.alphabet) throw InterfaceError("intersect: alphabets differ");
  if (a.endmarker != b.endmarker) throw InterfaceError("intersect: end-marker flags differ");

  auto pad = [](const Matrix& m) { return direct_sum(m, Matrix::scalar(1)); };
  const std::size_t nb = b.states.size();
  auto pair_id = [nb](StateId p, StateId q) { return p * nb + q; };

  MachineSpec out;
  out.kind = Kind::HVA;
  out.mode = Mode::Deterministic;
  out.blind = true;
  out.endmarker = a.endmarker;
  out.realtime = true;
  out.alphabet = a.alphabet;
  for (const auto& p : a.states)
    for (const auto& q : b.states) out.states.push_back(p + "|" + q);
  out.initial_state = pair_id(a.initial_state, b.initial_state);
  for (StateId p : a.accept_states)
    for (StateId q : b.accept_states) out.accept_states.push_back(pair_id(p, q));
  std::sort(out.accept_states.begin(), out.accept_states.end());
  out.dimension = (a.dimension + 1) * (b.dimension + 1);
  out.initial_vector = tensor_vec(concat(a.initial_vector, RowVector{Rational(1)}),
                                  concat(b.initial_vector, RowVector{Rational(1)}));
  for (const auto& ra : a.transitions)
    for (const auto& rb : b.transitions) {
      if (ra.input != rb.input) continue;
      out.transitions.push_back(TransitionRule{pair_id(ra.from, rb.from), ra.input, StatusPattern::wildcard(),
                                               pair_id(ra.to, rb.to), tensor(pad(ra.matrix()), pad(rb.matrix()))});
    }
  return {out, {report(pass, a, out, {{"right_states", std::to_string(b.states.size())},
                                      {"right_dimension", std::to_string(b.dimension)}})}};
}

}  // namespace hvalab
