#include <gtest/gtest.h>

#include <algorithm>

#include "hvalab/builders.hpp"
#include "hvalab/error.hpp"
#include "hvalab/langlab.hpp"
#include "hvalab/primes.hpp"
#include "hvalab/transforms.hpp"
#include "support/random_machines.hpp"

using namespace hvalab;

namespace {

MachineSpec named(std::string_view n) { return example(*ExampleName::parse(n)); }

void expect_equivalent(const MachineSpec& a, const MachineSpec& b, std::size_t maxlen) {
  const auto v = equivalent_up_to(a, b, maxlen);
  EXPECT_TRUE(v.equal) << "differs at '" << v.counterexample.value_or("") << "'";
}

void expect_language(const MachineSpec& m, std::string_view ref, std::size_t maxlen) {
  const auto v = matches_reference(m, *ReferenceLanguage::named(ref), maxlen);
  EXPECT_TRUE(v.equal) << ref << " differs at '" << v.counterexample.value_or("") << "'";
}

bool all_integer(const MachineSpec& m) {
  for (const auto& r : m.transitions)
    if (!r.matrix().is_integer()) return false;
  return m.initial_vector.is_integer();
}

// Stateless blind NBHVA_$(1) over {a}: a multiplies by `a`, $ by `end`.
MachineSpec unary_nbhva(Rational a, Rational end) {
  MachineSpec s;
  s.kind = Kind::HVA;
  s.mode = Mode::Nondeterministic;
  s.endmarker = true;
  s.alphabet = {'a'};
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 1;
  s.initial_vector = RowVector{1};
  s.transitions = {{0, Input::of('a'), {}, 0, Matrix::scalar(a)}, {0, Input::end_marker(), {}, 0, Matrix::scalar(end)}};
  return s;
}

MachineSpec one_counter_hva() {
  MachineSpec s = unary_nbhva(2, 1);
  s.alphabet = {'a', 'b'};
  s.states = {"p", "r"};
  s.accept_states = {0, 1};
  s.transitions = {{0, Input::of('a'), {}, 0, Matrix::scalar(2)},
                   {0, Input::of('b'), {}, 1, Matrix::scalar(Rational(1, 2))},
                   {1, Input::of('b'), {}, 1, Matrix::scalar(Rational(1, 2))},
                   {0, Input::end_marker(), {}, 0, Matrix::scalar(1)},
                   {1, Input::end_marker(), {}, 1, Matrix::scalar(1)}};
  return s;
}

// Two-state DVA(1) with end-marker accepting {aa}*.
MachineSpec even_dva() {
  MachineSpec s;
  s.kind = Kind::VA;
  s.alphabet = {'a'};
  s.states = {"even", "odd"};
  s.accept_states = {0};
  s.endmarker = true;
  s.dimension = 1;
  s.initial_vector = RowVector{1};
  const Matrix one = Matrix::scalar(1);
  s.transitions = {{0, Input::of('a'), {}, 1, one},
                   {1, Input::of('a'), {}, 0, one},
                   {0, Input::end_marker(), {}, 0, one},
                   {1, Input::end_marker(), {}, 1, one}};
  return s;
}

MachineSpec counter_machine(std::vector<Symbol> alphabet, std::vector<CounterUpdate> updates, Mode mode) {
  MachineSpec s;
  s.kind = Kind::CounterMachine;
  s.mode = mode;
  s.alphabet = alphabet;
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = updates.front().size();
  s.initial_vector = RowVector(s.dimension);
  for (std::size_t i = 0; i < alphabet.size(); ++i) s.transitions.push_back({0, Input::of(alphabet[i]), {}, 0, updates[i]});
  return s;
}

MachineSpec counter_anbn() {
  MachineSpec s = counter_machine({'a', 'b'}, {{1}, {-1}}, Mode::Nondeterministic);
  s.states = {"p", "r"};
  s.accept_states = {0, 1};
  s.transitions = {{0, Input::of('a'), {}, 0, CounterUpdate{1}},
                   {0, Input::of('b'), {}, 1, CounterUpdate{-1}},
                   {1, Input::of('b'), {}, 1, CounterUpdate{-1}}};
  return s;
}

const ReferenceLanguage kAbc{"ABC", {'a', 'b', 'c'}, [](std::string_view w) {
                               const auto n = [&](char c) { return std::count(w.begin(), w.end(), c); };
                               return n('a') == n('b') && n('b') == n('c');
                             }};

}  // namespace

TEST(ScaleInitialVector, Examples) {
  const MachineSpec eq = named("EQ");
  const MachineSpec three = scale_initial_vector(eq, 3).machine;
  EXPECT_EQ(three.initial_vector, (RowVector{3}));
  expect_equivalent(eq, three, 10);
  EXPECT_EQ(scale_initial_vector(eq, 1).machine, eq);

  MachineSpec half = eq;
  half.dimension = 2;
  half.initial_vector = RowVector{Rational(1, 2), 1};
  for (auto& r : half.transitions) r.effect = direct_sum(r.matrix(), Matrix::scalar(1));
  EXPECT_EQ(scale_initial_vector(half, 2).machine.initial_vector, (RowVector{1, 2}));

  EXPECT_THROW(scale_initial_vector(eq, 0), InvalidScalarError);
  EXPECT_EQ(scale_initial_vector(eq, 3).reports.at(0).pass_name, "scale-initial-vector");
}

TEST(RemoveEndmarker, PowR) {
  const MachineSpec pow = named("POW_r");
  const Transformed t = remove_endmarker(pow);
  EXPECT_FALSE(t.machine.endmarker);
  EXPECT_LE(t.machine.states.size(), pow.states.size() + 2);
  EXPECT_EQ(t.machine.dimension, 2u);
  EXPECT_TRUE(validate(t.machine).empty());
  expect_equivalent(pow, t.machine, 8);
}

TEST(RemoveEndmarker, EmptyStringOnly) {
  const MachineSpec eps = unary_nbhva(0, 1);
  const MachineSpec out = remove_endmarker(eps).machine;
  EXPECT_EQ(out.states.size(), eps.states.size() + 2);
  EXPECT_TRUE(out.is_accepting(out.initial_state));
  EXPECT_TRUE(accepts(out, ""));
  for (const auto& r : out.transitions) EXPECT_NE(r.to, out.initial_state);
  expect_equivalent(eps, out, 6);
}

TEST(RemoveEndmarker, EmptyLanguage) {
  const MachineSpec none = unary_nbhva(2, 2);
  const MachineSpec out = remove_endmarker(none).machine;
  EXPECT_LE(out.states.size(), none.states.size() + 1);
  EXPECT_TRUE(enumerate_accepted(out, 8).empty());
}

TEST(RemoveEndmarker, Errors) {
  MachineSpec sighted = named("POW_r");
  sighted.blind = false;
  for (auto& r : sighted.transitions) r.status = StatusPattern::eq();
  EXPECT_THROW(remove_endmarker(sighted), UnsupportedPassError);
  EXPECT_THROW(remove_endmarker(named("EQ")), UnsupportedPassError);
}

TEST(RemoveEndmarker, RandomMachinesKeepTheirLanguage) {
  hvalab::testing::MachineGen gen(61);
  for (int i = 0; i < 20; ++i) {
    const MachineSpec m = gen.nbhva_endmarker();
    const MachineSpec out = remove_endmarker(m).machine;
    EXPECT_LE(out.states.size(), m.states.size() + 2);
    expect_equivalent(m, out, 6);
  }
}

TEST(RationalsToIntegers, HalvingCounter) {
  const MachineSpec src = one_counter_hva();
  const Transformed t = rationals_to_integers(src);
  EXPECT_EQ(t.reports.back().parameters.at("c"), "2");
  EXPECT_EQ(t.machine.dimension, 3u);
  EXPECT_EQ(t.machine.states.size(), src.states.size());
  EXPECT_TRUE(all_integer(t.machine));
  EXPECT_TRUE(validate(t.machine).empty());
  expect_equivalent(src, t.machine, 8);
}

TEST(RationalsToIntegers, AlreadyInteger) {
  const MachineSpec pow = named("POW_r");
  const Transformed t = rationals_to_integers(pow);
  EXPECT_EQ(t.reports.back().parameters.at("c"), "1");
  EXPECT_EQ(t.machine.dimension, 4u);
  expect_equivalent(pow, t.machine, 8);
}

TEST(RationalsToIntegers, BorderMatrix) {
  const Matrix a{{Rational(1, 2), 1}, {0, 3}};
  const Matrix b = integer_border(a, 2);
  EXPECT_EQ(b, direct_sum(direct_sum(a.scaled(2), Matrix::scalar(2)), Matrix::scalar(1)));
  EXPECT_THROW(rationals_to_integers(named("EQ")), UnsupportedPassError);
}

TEST(RationalsToIntegers, RandomRationalMachines) {
  hvalab::testing::MachineGen gen(67);
  for (int i = 0; i < 15; ++i) {
    const MachineSpec m = gen.nbhva_endmarker(i % 2 == 0);
    const MachineSpec out = rationals_to_integers(m).machine;
    EXPECT_TRUE(all_integer(out));
    EXPECT_EQ(out.dimension, m.dimension + 2);
    EXPECT_EQ(out.states.size(), m.states.size());
    expect_equivalent(m, out, 5);
  }
}

TEST(EliminateStates, EvenLength) {
  const MachineSpec src = even_dva();
  const MachineSpec out = eliminate_states(src).machine;
  EXPECT_EQ(out.states.size(), 1u);
  EXPECT_EQ(out.accept_states, std::vector<StateId>{0});
  EXPECT_EQ(out.dimension, 3u);
  EXPECT_EQ(out.initial_vector, (RowVector{1, 1, 0}));
  expect_equivalent(src, out, 10);
  expect_language(out, "MOD:2", 10);
}

TEST(EliminateStates, SingleState) {
  MachineSpec s = even_dva();
  s.states = {"q"};
  s.dimension = 2;
  s.initial_vector = RowVector{1, 0};
  const Matrix swap{{0, 1}, {1, 0}};
  s.transitions = {{0, Input::of('a'), {}, 0, swap}, {0, Input::end_marker(), {}, 0, Matrix::identity(2)}};
  const MachineSpec out = eliminate_states(s).machine;
  EXPECT_EQ(out.dimension, 3u);
  expect_equivalent(s, out, 10);
  EXPECT_THROW(eliminate_states(named("LEQ")), UnsupportedPassError);
}

TEST(EliminateStates, BlockBookkeeping) {
  hvalab::testing::MachineGen gen(71);
  for (int i = 0; i < 20; ++i) {
    const MachineSpec m = gen.dva();
    const MachineSpec src = zero_nonaccepting_endmarker_rules(m);
    const MachineSpec out = eliminate_states(m).machine;
    const std::size_t k = m.dimension;
    EXPECT_EQ(out.dimension, m.states.size() * k + 1);
    for (const auto& w : enumerate_strings(m.alphabet, 4)) {
      const auto a = *run_deterministic(src, w).trace;
      const auto b = *run_deterministic(out, w).trace;
      for (std::size_t t = 0; t < a.size() && t < b.size(); ++t) {
        const RowVector& big = b[t].reg;
        EXPECT_EQ(big[0], a[t].reg[0]) << i << " '" << w << "' step " << t;
        for (StateId q = 0; q < m.states.size(); ++q)
          for (std::size_t j = 0; j < k; ++j) {
            const Rational expect = q == a[t].state ? a[t].reg[j] : Rational(0);
            EXPECT_EQ(big[1 + q * k + j], expect) << i << " '" << w << "' step " << t;
          }
      }
      EXPECT_EQ(accepts(m, w), accepts(out, w)) << i << " '" << w << "'";
    }
  }
}

TEST(CountersToHva1, OneCounter) {
  const MachineSpec src = counter_anbn();
  const MachineSpec out = counters_to_hva1(src).machine;
  EXPECT_EQ(out.kind, Kind::HVA);
  EXPECT_EQ(out.dimension, 1u);
  EXPECT_EQ(out.transitions[0].matrix(), Matrix::scalar(2));
  EXPECT_EQ(out.transitions[1].matrix(), Matrix::scalar(Rational(1, 2)));
  expect_equivalent(src, out, 10);
  expect_language(out, "AB", 10);
}

TEST(CountersToHva1, PrimeEncoding) {
  const MachineSpec two = counter_machine({'a', 'b'}, {{1, -1}, {0, 0}}, Mode::Deterministic);
  const MachineSpec out = counters_to_hva1(two).machine;
  EXPECT_EQ(out.transitions[0].matrix(), Matrix::scalar(Rational(2, 3)));
  EXPECT_EQ(out.transitions[1].matrix(), Matrix::scalar(1));

  MachineSpec sighted = two;
  sighted.blind = false;
  EXPECT_THROW(counters_to_hva1(sighted), UnsupportedPassError);
}

TEST(CountersToHva1, RegisterIsPrimePowerOfCounters) {
  const MachineSpec src = counter_machine({'a', 'b', 'c'}, {{1, 0, -1}, {-1, 1, 0}, {0, -1, 1}}, Mode::Deterministic);
  const MachineSpec out = counters_to_hva1(src).machine;
  for (const auto& w : enumerate_strings(src.alphabet, 5)) {
    Configuration a = initial_configuration(src), b = initial_configuration(out);
    for (char c : w) {
      a = step(src, a, Input::of(c)).at(0);
      b = step(out, b, Input::of(c)).at(0);
      Rational expect(1);
      for (std::size_t i = 0; i < 3; ++i) expect *= Rational(static_cast<long>(nth_prime(i))).pow(a.reg[i].numerator().get_si());
      EXPECT_EQ(b.reg[0], expect) << w;
    }
  }
}

TEST(CountersToIntegerHva3, Pipeline) {
  const MachineSpec out = counters_to_integer_hva3(counter_anbn()).machine;
  EXPECT_EQ(out.dimension, 3u);
  EXPECT_FALSE(out.endmarker);
  EXPECT_TRUE(all_integer(out));
  EXPECT_TRUE(validate(out).empty());
  expect_language(out, "AB", 8);
  EXPECT_EQ(counters_to_integer_hva3(counter_anbn()).reports.size(), 4u);
}

TEST(CountersToIntegerHva3, ThreeLetters) {
  const MachineSpec out =
      counters_to_integer_hva3(counter_machine({'a', 'b', 'c'}, {{1, 0}, {-1, 1}, {0, -1}}, Mode::Deterministic)).machine;
  EXPECT_EQ(out.dimension, 3u);
  const auto v = agree_up_to([&](std::string_view w) { return accepts(out, w); }, kAbc.membership, kAbc.alphabet, 6);
  EXPECT_TRUE(v.equal) << v.counterexample.value_or("");
}

TEST(CountersToIntegerHva3, EmptyLanguage) {
  MachineSpec none = counter_anbn();
  none.accept_states = {};
  const MachineSpec out = counters_to_integer_hva3(none).machine;
  EXPECT_TRUE(enumerate_accepted(out, 8).empty());
}

TEST(DfaToStatelessDbhva, Cycle) {
  Dfa d;
  d.alphabet = {'a'};
  d.states = 3;
  d.accepting = {0};
  d.delta = {{1}, {2}, {0}};
  const MachineSpec m = dfa_to_stateless_dbhva(d).machine;
  EXPECT_EQ(m.states.size(), 1u);
  EXPECT_EQ(m.initial_vector, (RowVector{1, 0, 0}));
  EXPECT_EQ(m.transitions.at(0).matrix(), (Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  expect_language(m, "MOD:3", 10);

  Dfa one;
  one.alphabet = {'a'};
  one.accepting = {0};
  one.delta = {{0}};
  const MachineSpec id = dfa_to_stateless_dbhva(one).machine;
  EXPECT_EQ(id.transitions.at(0).matrix(), Matrix::identity(1));
  expect_language(id, "MOD:1", 8);
}

TEST(DfaToStatelessDbhva, PartialDfa) {
  Dfa d;
  d.alphabet = {'a', 'b'};
  d.states = 2;
  d.accepting = {0};
  d.delta = {{1, std::nullopt}, {std::nullopt, 0}};
  const MachineSpec m = dfa_to_stateless_dbhva(d).machine;
  EXPECT_EQ(m.dimension, 2u);
  for (const auto& r : m.transitions)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(r.matrix()(i, j) == 0 || r.matrix()(i, j) == 1);
  const ReferenceLanguage ab_star{"(ab)*", {'a', 'b'}, [](std::string_view w) {
                                    if (w.size() % 2) return false;
                                    for (std::size_t i = 0; i < w.size(); ++i)
                                      if (w[i] != (i % 2 ? 'b' : 'a')) return false;
                                    return true;
                                  }};
  EXPECT_TRUE(matches_reference(m, ab_star, 8).equal);

  d.accepting = {1};
  EXPECT_THROW(dfa_to_stateless_dbhva(d), UnsupportedPassError);
}

TEST(IntersectBlindHva, Examples) {
  const MachineSpec mod6 = intersect_blind_hva(named("MOD(2)"), named("MOD(3)")).machine;
  expect_language(mod6, "MOD:6", 12);

  const MachineSpec eq = named("EQ");
  const MachineSpec self = intersect_blind_hva(eq, eq).machine;
  EXPECT_EQ(self.dimension, (eq.dimension + 1) * (eq.dimension + 1));
  expect_equivalent(eq, self, 8);

  expect_language(intersect_blind_hva(eq, named("AB_STAR")).machine, "AB_STAR", 8);

  EXPECT_THROW(intersect_blind_hva(named("MOD(2)"), eq), InterfaceError);
}
