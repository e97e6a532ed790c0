#include "hvalab/langlab.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "hvalab/diophantine.hpp"
#include "hvalab/error.hpp"

namespace hvalab {

namespace {

const std::vector<Symbol> kAB{'a', 'b'};

std::size_t count(std::string_view w, char c) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), c)); }

/// Length of the a^n b^n block at the front of w (n >= 1), or 0.
std::size_t block_length(std::string_view w, std::size_t n_required = 0) {
  std::size_t n = 0;
  while (n < w.size() && w[n] == 'a') ++n;
  if (n == 0 || (n_required && n != n_required) || w.size() < 2 * n) return 0;
  for (std::size_t i = n; i < 2 * n; ++i)
    if (w[i] != 'b') return 0;
  return 2 * n;
}

bool is_anbn(std::string_view w) { return w.empty() || block_length(w) == w.size(); }

bool is_block_star(std::string_view w, std::size_t n_required = 0) {
  while (!w.empty()) {
    const std::size_t len = block_length(w, n_required);
    if (len == 0) return false;
    w.remove_prefix(len);
  }
  return true;
}

bool only(std::string_view w, char c) { return count(w, c) == w.size(); }

bool dyck(std::string_view w) {
  long depth = 0;
  for (char c : w) {
    depth += c == '(' ? 1 : -1;
    if (depth < 0) return false;
  }
  return depth == 0;
}

bool pow_r(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && w[i] == 'a') ++i;
  const std::size_t j = w.size() - i;
  if (!only(w.substr(i), 'b') || j > 62) return false;
  return i == (std::size_t{1} << j);
}

bool neq(std::string_view w) {
  std::size_t i = 0;
  while (i < w.size() && w[i] == 'a') ++i;
  return only(w.substr(i), 'b') && i != w.size() - i;
}

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '-') out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

ReferenceLanguage make(std::string name, std::vector<Symbol> alphabet, Membership m) {
  return ReferenceLanguage{std::move(name), std::move(alphabet), std::move(m)};
}

std::vector<Symbol> sorted_alphabet(std::vector<Symbol> alphabet) {
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  return alphabet;
}

PropertyResult counterexample(std::vector<std::string> witnesses, std::string note) {
  return PropertyResult{PropertyResult::Status::Counterexample, std::move(witnesses), std::move(note)};
}

PropertyResult not_applicable(std::string note) {
  return PropertyResult{PropertyResult::Status::NotApplicable, {}, std::move(note)};
}

bool is_stateless_hva(const MachineSpec& spec) { return spec.kind == Kind::HVA && spec.is_stateless(); }

Membership membership_of(const MachineSpec& spec, const SearchBudget& budget) {
  return [&spec, budget](std::string_view w) { return accepts(spec, w, budget); };
}

}  // namespace

bool ReferenceLanguage::contains(std::string_view w) const {
  for (char c : w)
    if (std::find(alphabet.begin(), alphabet.end(), c) == alphabet.end()) return false;
  return membership(w);
}

ReferenceLanguage ReferenceLanguage::finite(const std::set<std::string>& words, std::vector<Symbol> alphabet) {
  if (alphabet.empty())
    for (const auto& w : words) alphabet.insert(alphabet.end(), w.begin(), w.end());
  alphabet = sorted_alphabet(std::move(alphabet));
  std::string name = "{";
  for (const auto& w : words) name += (name.size() > 1 ? "," : "") + w;
  name += "}";
  return make(name, std::move(alphabet), [words](std::string_view w) { return words.count(std::string(w)) > 0; });
}

std::optional<ReferenceLanguage> ReferenceLanguage::named(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') return std::nullopt;
    std::set<std::string> words;
    std::stringstream in(std::string(text.substr(1, text.size() - 2)));
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
      words.insert(item == "eps" ? "" : item);
    }
    return finite(words);
  }

  std::string head(text);
  std::optional<long> param;
  const auto open = head.find_first_of("(:");
  if (open != std::string::npos) {
    std::string rest = head.substr(open + 1);
    head = head.substr(0, open);
    if (!rest.empty() && rest.back() == ')') rest.pop_back();
    try {
      std::size_t used = 0;
      param = std::stol(rest, &used);
      if (used != rest.size() || *param < 0) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  const std::string key = normalize(head);
  const auto p = static_cast<std::size_t>(param.value_or(0));

  if (!param) {
    if (key == "AB") return make("AB", kAB, is_anbn);
    if (key == "ABSTAR") return make("AB_STAR", kAB, [](std::string_view w) { return is_block_star(w); });
    if (key == "EQ") return make("EQ", kAB, [](std::string_view w) { return count(w, 'a') == count(w, 'b'); });
    if (key == "LEQ") return make("LEQ", kAB, [](std::string_view w) { return count(w, 'a') <= count(w, 'b'); });
    if (key == "NEQ") return make("NEQ", kAB, neq);
    if (key == "DYCK") return make("DYCK", {'(', ')'}, dyck);
    if (key == "POWR") return make("POW_r", kAB, pow_r);
    if (key == "EVENAB")
      return make("EVENAB", kAB, [](std::string_view w) { return is_anbn(w) && (w.size() / 2) % 2 == 0; });
    if (key == "LEPSILON") return make("L_EPSILON", kAB, [](std::string_view w) { return w.empty(); });
    if (key == "MOD23") return make("MOD23", {'a'}, [](std::string_view w) { return w.size() != 1; });
    return std::nullopt;
  }
  if (key == "MOD" && p >= 1)
    return make("MOD(" + std::to_string(p) + ")", {'a'}, [p](std::string_view w) { return w.size() % p == 0; });
  if (key == "ABKSTAR" && p >= 1)
    return make("AB_K_STAR(" + std::to_string(p) + ")", kAB, [p](std::string_view w) { return is_block_star(w, p); });
  if (key == "UNARYPOINT")
    return make("UNARY_POINT(" + std::to_string(p) + ")", kAB,
                [p](std::string_view w) { return w.size() == p && only(w, 'a'); });
  return std::nullopt;
}

ReferenceLanguage reference_for(const ExampleName& name) {
  using Id = ExampleName::Id;
  const std::string param = std::to_string(name.param);
  std::string key;
  switch (name.id) {
    case Id::PowR: key = "POW_r"; break;
    case Id::AbStar: key = "AB_STAR"; break;
    case Id::Mod:
    case Id::ModRot: key = "MOD:" + param; break;
    case Id::AbKStar: key = "AB_K_STAR:" + param; break;
    case Id::Eq: key = "EQ"; break;
    case Id::Leq: key = "LEQ"; break;
    case Id::Dyck: key = "DYCK"; break;
    case Id::EvenAb: key = "EVENAB"; break;
    case Id::LEpsilon: key = "L_EPSILON"; break;
    case Id::UnaryPoint: key = "UNARY_POINT:" + param; break;
  }
  auto ref = ReferenceLanguage::named(key);
  if (!ref) throw BuilderError("no reference language for " + name.to_string());
  return *ref;
}

std::vector<std::string> enumerate_strings(std::vector<Symbol> alphabet, std::size_t maxlen) {
  alphabet = sorted_alphabet(std::move(alphabet));
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= maxlen && !alphabet.empty(); ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol c : alphabet) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

std::vector<std::string> enumerate_accepted(const MachineSpec& spec, std::size_t maxlen, const SearchBudget& budget) {
  std::vector<std::string> out;
  for (auto& w : enumerate_strings(spec.alphabet, maxlen))
    if (accepts(spec, w, budget)) out.push_back(std::move(w));
  return out;
}

EquivalenceVerdict agree_up_to(const Membership& a, const Membership& b, const std::vector<Symbol>& alphabet,
                               std::size_t maxlen) {
  for (const auto& w : enumerate_strings(alphabet, maxlen))
    if (a(w) != b(w)) return EquivalenceVerdict{false, w, maxlen};
  return EquivalenceVerdict{true, std::nullopt, maxlen};
}

EquivalenceVerdict equivalent_up_to(const MachineSpec& a, const MachineSpec& b, std::size_t maxlen,
                                    const SearchBudget& budget) {
  if (sorted_alphabet(a.alphabet) != sorted_alphabet(b.alphabet))
    throw AlphabetError("machines have different alphabets");
  return agree_up_to(membership_of(a, budget), membership_of(b, budget), a.alphabet, maxlen);
}

EquivalenceVerdict matches_reference(const MachineSpec& spec, const ReferenceLanguage& ref, std::size_t maxlen,
                                     const SearchBudget& budget) {
  return agree_up_to(membership_of(spec, budget), [&ref](std::string_view w) { return ref.contains(w); },
                     spec.alphabet, maxlen);
}

std::string_view to_string(PropertyResult::Status s) {
  switch (s) {
    case PropertyResult::Status::Ok: return "Ok";
    case PropertyResult::Status::Counterexample: return "Counterexample";
    case PropertyResult::Status::NotApplicable: return "NotApplicable";
  }
  return "?";
}

PropertyResult check_star_closure(const Membership& accepts_fn, const std::vector<Symbol>& alphabet,
                                  std::size_t maxlen) {
  std::vector<std::string> accepted;
  std::set<std::string> lookup;
  for (auto& w : enumerate_strings(alphabet, maxlen))
    if (accepts_fn(w)) {
      lookup.insert(w);
      accepted.push_back(std::move(w));
    }
  // Pairs ordered by the concatenation, then by the split point.
  for (const auto& w : enumerate_strings(alphabet, maxlen)) {
    for (std::size_t cut = 1; cut < w.size(); ++cut) {
      const std::string u = w.substr(0, cut), v = w.substr(cut);
      if (lookup.count(u) && lookup.count(v) && !lookup.count(w)) return counterexample({u, v, w}, "uv rejected");
    }
  }
  if (!lookup.count("")) return counterexample({"", "", ""}, "empty string rejected");
  return {};
}

PropertyResult check_star_closure(const MachineSpec& spec, std::size_t maxlen, const SearchBudget& budget) {
  if (!is_stateless_hva(spec)) return not_applicable("needs a stateless HVA");
  return check_star_closure(membership_of(spec, budget), spec.alphabet, maxlen);
}

PropertyResult check_suffix_property(const Membership& accepts_fn, const std::vector<Symbol>& alphabet,
                                     std::size_t maxlen) {
  std::map<std::string, bool> memo;
  auto in = [&](const std::string& w) {
    auto it = memo.find(w);
    if (it == memo.end()) it = memo.emplace(w, accepts_fn(w)).first;
    return it->second;
  };
  for (const auto& w : enumerate_strings(alphabet, maxlen)) {
    if (!in(w)) continue;
    for (std::size_t cut = 0; cut < w.size(); ++cut) {
      const std::string w1 = w.substr(0, cut), w2 = w.substr(cut);
      if (in(w1) && !in(w2)) return counterexample({w1, w, w2}, "w1 and w1w2 accepted, w2 rejected");
    }
  }
  return {};
}

PropertyResult check_suffix_property(const MachineSpec& spec, std::size_t maxlen) {
  if (!is_stateless_hva(spec) || spec.mode != Mode::Deterministic)
    return not_applicable("needs a stateless deterministic HVA");
  return check_suffix_property(membership_of(spec, {}), spec.alphabet, maxlen);
}

PropertyResult check_gcd_property(const Membership& accepts_fn, Symbol letter, std::size_t maxlen) {
  std::vector<bool> acc(maxlen + 1);
  for (std::size_t i = 0; i <= maxlen; ++i) acc[i] = accepts_fn(std::string(i, letter));
  for (std::size_t j = 2; j <= maxlen; ++j) {
    if (!acc[j]) continue;
    for (std::size_t i = 1; i < j; ++i) {
      if (!acc[i]) continue;
      const std::size_t g = std::gcd(i, j);
      if (!acc[g])
        return counterexample({std::string(i, letter), std::string(j, letter), std::string(g, letter)},
                              "a^gcd(i,j) rejected");
    }
  }
  return {};
}

PropertyResult check_gcd_property(const MachineSpec& spec, std::size_t maxlen) {
  if (!is_stateless_hva(spec) || spec.mode != Mode::Deterministic || spec.alphabet.size() != 1)
    return not_applicable("needs a unary stateless deterministic HVA");
  return check_gcd_property(membership_of(spec, {}), spec.alphabet.front(), maxlen);
}

PropertyResult check_commutative_matrices(const MachineSpec& spec, std::size_t maxlen, const SearchBudget& budget) {
  if (!is_stateless_hva(spec) || !spec.blind) return not_applicable("needs a stateless blind HVA");
  for (std::size_t i = 0; i < spec.transitions.size(); ++i)
    for (std::size_t j = i + 1; j < spec.transitions.size(); ++j)
      if (!commute(spec.transitions[i].matrix(), spec.transitions[j].matrix()))
        return not_applicable("rules " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");

  std::map<std::string, bool> memo;
  const auto in = [&](std::string_view w) {
    const std::string key(w);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, accepts(spec, w, budget)).first;
    return it->second;
  };
  if (auto pair = check_commutative(in, sorted_alphabet(spec.alphabet), maxlen))
    return counterexample({pair->first, pair->second}, "not closed under permutation");
  for (const auto& w : enumerate_strings(spec.alphabet, maxlen)) {
    const std::string r = reversed(w);
    if (in(w) != in(r)) return counterexample({w, r}, "not closed under reversal");
  }
  return {};
}

}  // namespace hvalab
