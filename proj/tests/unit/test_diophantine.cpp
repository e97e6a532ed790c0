#include <gtest/gtest.h>

#include <algorithm>

#include "hvalab/diophantine.hpp"
#include "hvalab/error.hpp"
#include "hvalab/langlab.hpp"
#include "hvalab/primes.hpp"
#include "support/random_machines.hpp"

using namespace hvalab;

namespace {

const std::vector<Symbol> kAb{'a', 'b'};

Rational multiplier(const MachineSpec& m, Symbol s) {
  for (const auto& r : m.transitions)
    if (r.input == Input::of(s)) return r.matrix()(0, 0);
  ADD_FAILURE() << "no move on " << s;
  return Rational(0);
}

MachineSpec famw(std::vector<Rational> multipliers) {
  MachineSpec s;
  s.kind = Kind::FAM;
  s.alphabet = {'a', 'b', 'c'};
  s.alphabet.resize(multipliers.size());
  s.states = {"q"};
  s.accept_states = {0};
  s.dimension = 1;
  s.initial_vector = RowVector{1};
  for (std::size_t i = 0; i < multipliers.size(); ++i)
    s.transitions.push_back({0, Input::of(s.alphabet[i]), {}, 0, Matrix::scalar(multipliers[i])});
  return s;
}

// Direct scan over the box [0, bound]^n.
std::set<ParikhVector> scan(const DiophantineSystem& sys, std::size_t bound) {
  std::set<ParikhVector> out;
  const std::size_t n = sys.alphabet.size();
  ParikhVector x(n, 0);
  while (true) {
    bool zero = true;
    for (const auto& row : sys.coefficients) {
      long sum = 0;
      for (std::size_t i = 0; i < n; ++i) sum += row[i] * static_cast<long>(x[i]);
      zero &= sum == 0;
    }
    if (zero) out.insert(x);
    std::size_t i = 0;
    while (i < n && x[i] == bound) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace

TEST(Parikh, Examples) {
  EXPECT_EQ(parikh("abba", kAb), (ParikhVector{2, 2}));
  EXPECT_EQ(parikh("", kAb), (ParikhVector{0, 0}));
  EXPECT_EQ(parikh("aab", kAb), (ParikhVector{2, 1}));
  EXPECT_THROW(parikh("abc", kAb), AlphabetError);
}

TEST(FamwFromSystem, Multipliers) {
  const MachineSpec eq = famw_from_system({{{1, -1}}, kAb});
  EXPECT_TRUE(validate(eq).empty());
  EXPECT_TRUE(eq.is_stateless());
  EXPECT_EQ(multiplier(eq, 'a'), Rational(2));
  EXPECT_EQ(multiplier(eq, 'b'), Rational(1, 2));
  EXPECT_TRUE(matches_reference(eq, *ReferenceLanguage::named("EQ"), 10).equal);

  const MachineSpec twice = famw_from_system({{{2, -1}}, kAb});
  EXPECT_EQ(multiplier(twice, 'a'), Rational(4));
  EXPECT_EQ(multiplier(twice, 'b'), Rational(1, 2));
  for (const auto& w : enumerate_strings(kAb, 9))
    EXPECT_EQ(accepts(twice, w), std::count(w.begin(), w.end(), 'b') == 2 * std::count(w.begin(), w.end(), 'a')) << w;

  const MachineSpec all = famw_from_system({{}, kAb});
  EXPECT_EQ(multiplier(all, 'a'), Rational(1));
  EXPECT_EQ(multiplier(all, 'b'), Rational(1));
  EXPECT_EQ(enumerate_accepted(all, 4).size(), enumerate_strings(kAb, 4).size());

  EXPECT_THROW(famw_from_system({{{1, 2, 3}}, kAb}), ShapeError);
}

TEST(FamwFromSystem, RegisterIsProductOfMultipliers) {
  const DiophantineSystem sys{{{1, -2, 0}, {0, 1, -1}}, {'a', 'b', 'c'}};
  const MachineSpec m = famw_from_system(sys);
  for (const auto& w : enumerate_strings(sys.alphabet, 5)) {
    const auto trace = *run_deterministic(m, w).trace;
    Rational expect(1);
    const ParikhVector p = parikh(w, sys.alphabet);
    for (std::size_t i = 0; i < 3; ++i) expect *= multiplier(m, sys.alphabet[i]).pow(static_cast<long>(p[i]));
    EXPECT_EQ(trace.back().reg[0], expect) << w;
  }
}

TEST(SystemFromFamw, Factorization) {
  const DiophantineSystem s = system_from_famw(famw({6, Rational(1, 6)}));
  EXPECT_EQ(s.coefficients, (std::vector<std::vector<long>>{{1, -1}, {1, -1}}));

  const DiophantineSystem z = system_from_famw(famw({2, 1}));
  EXPECT_EQ(z.coefficients, (std::vector<std::vector<long>>{{1, 0}}));

  MachineSpec bad = famw({2, 1});
  bad.transitions[0].effect = Matrix::scalar(0);
  EXPECT_THROW(system_from_famw(bad), DomainError);
  EXPECT_THROW(system_from_famw(example(*ExampleName::parse("LEQ"))), UnsupportedKindError);
}

TEST(SystemFromFamw, RoundTrip) {
  hvalab::testing::MachineGen gen(73);
  for (int i = 0; i < 40; ++i) {
    const DiophantineSystem sys = gen.system();
    const DiophantineSystem back = system_from_famw(famw_from_system(sys));
    const DiophantineSystem canon = sys.canonical();
    // Trailing rows that vanish leave no prime behind; earlier zero rows keep their prime with a zero row.
    EXPECT_EQ(back.canonical(), canon) << i;
    EXPECT_EQ(back.alphabet, sys.alphabet);
  }
  const DiophantineSystem full{{{1, -1}, {2, 0}}, kAb};
  EXPECT_EQ(system_from_famw(famw_from_system(full)), full);
}

TEST(SolutionsUpTo, Examples) {
  EXPECT_EQ(solutions_up_to({{{1, -1}}, kAb}, 2), (std::set<ParikhVector>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(solutions_up_to({{{1, 1}}, kAb}, 5), (std::set<ParikhVector>{{0, 0}}));
  EXPECT_EQ(solutions_up_to({{{2, -1}}, kAb}, 4), (std::set<ParikhVector>{{0, 0}, {1, 2}, {2, 4}}));
  EXPECT_TRUE(solves({{{2, -1}}, kAb}, {1, 2}));
  EXPECT_FALSE(solves({{{2, -1}}, kAb}, {1, 1}));
}

TEST(SolutionsUpTo, MatchesScan) {
  hvalab::testing::MachineGen gen(79);
  for (int i = 0; i < 30; ++i) {
    const DiophantineSystem sys = gen.system();
    EXPECT_EQ(solutions_up_to(sys, 4), scan(sys, 4)) << i;
  }
}

TEST(SolutionsUpTo, AcceptedParikhImages) {
  hvalab::testing::MachineGen gen(83);
  for (int i = 0; i < 10; ++i) {
    const DiophantineSystem sys = gen.system(2, 2);
    const MachineSpec m = famw_from_system(sys);
    const std::size_t bound = 3, len = bound * sys.alphabet.size();
    std::set<ParikhVector> seen;
    for (const auto& w : enumerate_accepted(m, len)) {
      const ParikhVector p = parikh(w, sys.alphabet);
      if (*std::max_element(p.begin(), p.end()) <= bound) seen.insert(p);
    }
    EXPECT_EQ(seen, solutions_up_to(sys, bound)) << i;
  }
}

TEST(CheckCommutative, Examples) {
  const auto eq = *ReferenceLanguage::named("EQ");
  EXPECT_FALSE(check_commutative(eq.membership, eq.alphabet, 6));

  const auto ab = ReferenceLanguage::finite({"ab"}, kAb);
  const auto bad = check_commutative(ab.membership, kAb, 4);
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->first, "ab");
  EXPECT_EQ(bad->second, "ba");

  hvalab::testing::MachineGen gen(89);
  for (int i = 0; i < 10; ++i) {
    const MachineSpec m = famw_from_system(gen.system());
    EXPECT_FALSE(check_commutative([&](std::string_view w) { return accepts(m, w); }, m.alphabet, 6)) << i;
  }
}
