#include <gtest/gtest.h>

#include <algorithm>

#include "hvalab/builders.hpp"
#include "hvalab/error.hpp"
#include "hvalab/langlab.hpp"
#include "hvalab/machine.hpp"
#include "hvalab/simulate.hpp"
#include "support/random_machines.hpp"

using namespace hvalab;

namespace {

MachineSpec named(std::string_view n) { return example(*ExampleName::parse(n)); }

Configuration config(StateId q, RowVector reg, std::size_t pos = 0) { return {q, std::move(reg), pos, 0}; }

bool has_rule(const std::vector<Diagnostic>& ds, std::string_view rule) {
  for (const auto& d : ds)
    if (d.rule == rule) return true;
  return false;
}

MachineSpec one_state_gfa() {
  MachineSpec s;
  s.kind = Kind::GFA;
  s.alphabet = {'a'};
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 1;
  s.initial_vector = RowVector{1};
  s.gfa_final_vector = RowVector{1};
  s.gfa_cutpoint = Rational(8);
  s.transitions = {{0, Input::of('a'), {}, 0, Matrix::scalar(2)}};
  return s;
}

// a: X -> X*M_a, b: X -> X*M_a^-1 over 2x2 integer matrices, so the register
// returns to I exactly when #a = #b.
MachineSpec balanced_extended_fa() {
  MachineSpec s;
  s.kind = Kind::ExtendedFA;
  s.mode = Mode::Nondeterministic;
  s.realtime = false;
  s.alphabet = {'a', 'b'};
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 2;
  s.initial_vector = flattened_identity(2);
  s.transitions = {{0, Input::of('a'), {}, 0, Matrix{{1, 2}, {0, 1}}},
                   {0, Input::of('b'), {}, 0, Matrix{{1, -2}, {0, 1}}}};
  return s;
}

MachineSpec looping_extended_fa() {
  MachineSpec s = balanced_extended_fa();
  s.alphabet = {'a'};
  s.states = {"q", "r"};
  s.accept_states = {1};
  s.transitions = {{0, Input::epsilon(), {}, 0, Matrix{{2, 0}, {0, 1}}},
                   {0, Input::of('a'), {}, 1, Matrix{{2, 0}, {0, 1}}}};
  return s;
}

MachineSpec counter_machine() {
  MachineSpec s;
  s.kind = Kind::CounterMachine;
  s.mode = Mode::Deterministic;
  s.blind = false;
  s.alphabet = {'a'};
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 2;
  s.initial_vector = RowVector(2);
  s.transitions = {{0, Input::of('a'), {{hvalab::Test::Any, hvalab::Test::Any}}, 0, CounterUpdate{1, 0}}};
  return s;
}

}  // namespace

TEST(Validate, ExampleMachinesAreValid) {
  for (const char* n : {"POW_r", "AB_STAR", "MOD(3)", "MOD_ROT(4)", "AB_K_STAR(2)", "EQ", "LEQ", "DYCK", "EVENAB",
                        "L_EPSILON", "UNARY_POINT(3)"}) {
    EXPECT_TRUE(validate(named(n)).empty()) << n;
  }
  EXPECT_TRUE(validate(one_state_gfa()).empty());
  EXPECT_TRUE(validate(balanced_extended_fa()).empty());
  EXPECT_TRUE(validate(counter_machine()).empty());
}

TEST(Validate, DeterminismClash) {
  MachineSpec s = named("POW_r");
  s.blind = false;
  for (auto& r : s.transitions) r.status = StatusPattern::eq();
  s.transitions.push_back({0, Input::of('a'), StatusPattern::eq(), 1, Matrix::identity(2)});
  const auto ds = validate(s);
  ASSERT_FALSE(ds.empty());
  EXPECT_TRUE(has_rule(ds, "determinism"));
  bool points_at_rule = false;
  for (const auto& d : ds) points_at_rule |= d.transition.has_value();
  EXPECT_TRUE(points_at_rule);
}

TEST(Validate, FamPositivity) {
  MachineSpec s = named("EQ");
  s.kind = Kind::FAM;
  s.transitions[0].effect = Matrix::scalar(-2);
  EXPECT_TRUE(has_rule(validate(s), "fam-positivity"));
}

TEST(Validate, OtherInvariants) {
  MachineSpec blind = named("POW_r");
  blind.transitions[0].status = StatusPattern::eq();
  EXPECT_FALSE(validate(blind).empty());

  MachineSpec shape = named("POW_r");
  shape.transitions[0].effect = Matrix::identity(3);
  EXPECT_FALSE(validate(shape).empty());

  MachineSpec eps = named("EQ");
  eps.transitions.push_back({0, Input::epsilon(), {}, 0, Matrix::scalar(1)});
  EXPECT_FALSE(validate(eps).empty());

  MachineSpec counter = counter_machine();
  counter.transitions[0].effect = CounterUpdate{2, 0};
  EXPECT_FALSE(validate(counter).empty());

  MachineSpec gfa = one_state_gfa();
  gfa.gfa_cutpoint.reset();
  EXPECT_FALSE(validate(gfa).empty());

  MachineSpec efa = balanced_extended_fa();
  efa.blind = false;
  EXPECT_FALSE(validate(efa).empty());
}

TEST(StatusOf, PerKind) {
  const MachineSpec hva = named("POW_r");
  EXPECT_EQ(status_of(hva, config(0, hva.initial_vector)), StatusPattern::eq());
  EXPECT_EQ(status_of(hva, config(0, RowVector{2, 1})), StatusPattern::ne());

  MachineSpec va = hva;
  va.kind = Kind::VA;
  EXPECT_EQ(status_of(va, config(0, RowVector{3, 1})), StatusPattern::ne());
  EXPECT_EQ(status_of(va, config(0, RowVector{1, 9})), StatusPattern::eq());

  const MachineSpec cm = counter_machine();
  EXPECT_EQ(status_of(cm, config(0, RowVector{0, 5})), (StatusPattern{{hvalab::Test::Eq, hvalab::Test::Ne}}));

  EXPECT_THROW(status_of(one_state_gfa(), config(0, RowVector{1})), UnsupportedKindError);
}

TEST(Step, Successors) {
  const MachineSpec pow = named("POW_r");
  const auto next = step(pow, config(0, RowVector{1, 1}), Input::of('a'));
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(next[0].state, 0u);
  EXPECT_EQ(next[0].reg, (RowVector{2, 1}));
  EXPECT_EQ(next[0].position, 1u);

  EXPECT_TRUE(step(pow, config(1, RowVector{1, 1}), Input::of('a')).empty());

  const MachineSpec leq = named("LEQ");
  const auto two = step(leq, config(leq.initial_state, RowVector{1}), Input::of('b'));
  ASSERT_EQ(two.size(), 2u);
  std::vector<RowVector> regs{two[0].reg, two[1].reg};
  std::sort(regs.begin(), regs.end(), [](const RowVector& a, const RowVector& b) { return a[0] < b[0]; });
  EXPECT_EQ(regs[0], (RowVector{Rational(1, 2)}));
  EXPECT_EQ(regs[1], (RowVector{1}));
}

TEST(Step, EpsilonSpendsBudgetNotPosition) {
  const MachineSpec s = looping_extended_fa();
  const auto next = step(s, initial_configuration(s), Input::epsilon());
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(next[0].position, 0u);
  EXPECT_EQ(next[0].epsilon_spent, 1u);
}

TEST(RunDeterministic, PowR) {
  const MachineSpec pow = named("POW_r");
  const RunResult ok = run_deterministic(pow, "aab");
  EXPECT_EQ(ok.verdict, Verdict::Accept);
  ASSERT_TRUE(ok.trace);
  EXPECT_EQ(ok.trace->size(), 5u);
  EXPECT_EQ(ok.trace->back().reg, (RowVector{1, 1}));
  EXPECT_EQ(run_deterministic(pow, "ab").verdict, Verdict::Reject);

  const RunResult dead = run_deterministic(pow, "ba");
  EXPECT_EQ(dead.verdict, Verdict::Reject);
  EXPECT_LT(dead.trace->size(), 4u);
  EXPECT_EQ(run_deterministic(named("EQ"), "").verdict, Verdict::Accept);
}

TEST(RunNondeterministic, Leq) {
  const MachineSpec leq = named("LEQ");
  const RunResult r = run_nondeterministic(leq, "ab");
  EXPECT_EQ(r.verdict, Verdict::Accept);
  ASSERT_TRUE(r.accepting_path);
  EXPECT_EQ(r.accepting_path->size(), 2u);
  EXPECT_EQ(run_nondeterministic(leq, "a").verdict, Verdict::Reject);
}

TEST(RunNondeterministic, BudgetExceededOnEpsilonGrowth) {
  const MachineSpec s = looping_extended_fa();
  EXPECT_EQ(run_nondeterministic(s, "").verdict, Verdict::BudgetExceeded);
  EXPECT_THROW(accepts(s, "a"), UndecidedError);
  SearchBudget tiny;
  tiny.max_configurations = 3;
  try {
    accepts(s, "", tiny);
    FAIL() << "expected UndecidedError";
  } catch (const UndecidedError& e) {
    EXPECT_EQ(e.budget().max_configurations, 3u);
  }
}

TEST(RunNondeterministic, AgreesWithDeterministicRuns) {
  hvalab::testing::MachineGen gen(41);
  const auto words = enumerate_strings({'a', 'b'}, 6);
  for (int i = 0; i < 25; ++i) {
    const MachineSpec m = gen.dva();
    ASSERT_TRUE(validate(m).empty());
    for (const auto& w : words) {
      const Verdict d = run_deterministic(m, w).verdict;
      EXPECT_EQ(run_nondeterministic(m, w).verdict, d) << i << " '" << w << "'";
    }
  }
}

TEST(RunDeterministic, TraceLengthIsLettersPlusOne) {
  hvalab::testing::MachineGen gen(43);
  for (int i = 0; i < 20; ++i) {
    const MachineSpec m = gen.dva();
    for (const auto& w : enumerate_strings(m.alphabet, 5)) {
      const RunResult r = run_deterministic(m, w);
      const std::size_t full = w.size() + (m.endmarker ? 1 : 0) + 1;
      if (r.verdict == Verdict::Accept) EXPECT_EQ(r.trace->size(), full);
      EXPECT_LE(r.trace->size(), full);
    }
  }
}

TEST(Blind, StatusFieldIsIgnored) {
  hvalab::testing::MachineGen gen(47);
  for (int i = 0; i < 20; ++i) {
    MachineSpec m = gen.nbhva_endmarker(false);
    MachineSpec relabelled = m;
    for (auto& r : relabelled.transitions) r.status = StatusPattern::wildcard();
    for (const auto& w : enumerate_strings(m.alphabet, 5))
      EXPECT_EQ(accepts(m, w), accepts(relabelled, w));
  }
}

TEST(Hva, AcceptanceMeansRegisterIsInitialVector) {
  hvalab::testing::MachineGen gen(53);
  for (int i = 0; i < 20; ++i) {
    const MachineSpec m = gen.dva();
    if (m.kind != Kind::HVA) continue;
    for (const auto& w : enumerate_strings(m.alphabet, 5)) {
      const RunResult r = run_deterministic(m, w);
      if (r.verdict == Verdict::Accept) EXPECT_EQ(r.trace->back().reg, m.initial_vector);
    }
  }
}

TEST(Gfa, Values) {
  const MachineSpec g = one_state_gfa();
  EXPECT_EQ(gfa_value(g, ""), Rational(1));
  EXPECT_EQ(gfa_value(g, "aaa"), Rational(8));
  EXPECT_TRUE(accepts(g, "aaa"));
  EXPECT_FALSE(accepts(g, "aa"));
  EXPECT_THROW(gfa_value(named("EQ"), "a"), UnsupportedKindError);
}

TEST(Gfa, IncrementalMatchesClosedForm) {
  MachineSpec g;
  g.kind = Kind::GFA;
  g.alphabet = {'a', 'b'};
  g.states = {"q"};
  g.accept_states = {0};
  g.dimension = 2;
  g.initial_vector = RowVector{1, Rational(1, 2)};
  g.gfa_final_vector = RowVector{3, -1};
  g.gfa_cutpoint = Rational(0);
  const Matrix ma{{1, 2}, {0, 1}}, mb{{Rational(1, 3), 0}, {1, -1}};
  g.transitions = {{0, Input::of('a'), {}, 0, ma}, {0, Input::of('b'), {}, 0, mb}};
  for (const auto& w : enumerate_strings(g.alphabet, 6)) {
    RowVector v = g.initial_vector;
    for (char c : w) v = v * (c == 'a' ? ma : mb);
    EXPECT_EQ(gfa_value(g, w), dot(v, *g.gfa_final_vector)) << w;
  }
}

TEST(Accepts, ExampleMachines) {
  const MachineSpec mod3 = named("MOD(3)");
  EXPECT_TRUE(accepts(mod3, "aaa"));
  EXPECT_FALSE(accepts(mod3, "aa"));
  EXPECT_TRUE(accepts(named("AB_STAR"), "aabbab"));
  EXPECT_FALSE(accepts(named("AB_STAR"), "aabba"));
  EXPECT_THROW(accepts(mod3, "b"), AlphabetError);
}

TEST(ExtendedFaEmbed, Shapes) {
  MachineSpec scalar = balanced_extended_fa();
  scalar.dimension = 1;
  scalar.initial_vector = flattened_identity(1);
  scalar.transitions = {{0, Input::of('a'), {}, 0, Matrix::scalar(2)},
                        {0, Input::of('b'), {}, 0, Matrix::scalar(Rational(1, 2))}};
  const MachineSpec one = extendedfa_embed(scalar);
  EXPECT_EQ(one.kind, Kind::HVA);
  EXPECT_EQ(one.dimension, 1u);
  EXPECT_EQ(one.transitions[0].matrix(), Matrix::scalar(2));

  MachineSpec swap = balanced_extended_fa();
  const Matrix m{{0, 1}, {1, 0}};
  swap.transitions = {{0, Input::of('a'), {}, 0, m}};
  const MachineSpec four = extendedfa_embed(swap);
  EXPECT_EQ(four.dimension, 4u);
  EXPECT_EQ(four.initial_vector, flattened_identity(2));
  EXPECT_EQ(four.transitions[0].matrix(), tensor(Matrix::identity(2), m));
}

TEST(ExtendedFaEmbed, SameLanguage) {
  const MachineSpec src = balanced_extended_fa();
  const MachineSpec hva = extendedfa_embed(src);
  for (const auto& w : enumerate_strings(src.alphabet, 8)) {
    const bool balanced = std::count(w.begin(), w.end(), 'a') == std::count(w.begin(), w.end(), 'b');
    EXPECT_EQ(accepts(src, w), balanced) << w;
    EXPECT_EQ(accepts(hva, w), balanced) << w;
  }
  hvalab::testing::MachineGen gen(59);
  for (int i = 0; i < 15; ++i) {
    const MachineSpec e = gen.extended_fa();
    const MachineSpec h = extendedfa_embed(e);
    for (const auto& w : enumerate_strings(e.alphabet, 5)) EXPECT_EQ(accepts(e, w), accepts(h, w)) << i << " " << w;
  }
}
