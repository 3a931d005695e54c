#include "shuffle/verify.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shuffle/errors.hpp"
#include "shuffle/families.hpp"
#include "shuffle/formats.hpp"
#include "shuffle/periodic.hpp"

namespace shuffle {

namespace {

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("range: expected a count in '" + std::string(whole) + "'",
                     static_cast<std::size_t>(text.data() - whole.data()));
  return value;
}

struct Sweep {
  std::size_t maxlen;
  std::string alphabet;
  const SweepOptions& options;
};

std::string sizes_detail(std::initializer_list<std::pair<const char*, std::string>> fields) {
  std::string out;
  for (const auto& [key, value] : fields) {
    if (!out.empty()) out += ' ';
    out += std::string(key) + "=" + value;
  }
  return out;
}

template <typename T>
std::string str(const T& value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

std::size_t total_length(const Word& w1, const Word& w2, std::size_t n, std::size_t k,
                         std::size_t l) {
  return w1.size() + w2.size() + n * (k + l);
}

// Every canonical base word with its instances (w1, k, w2, l), k >= l, within the cap.
void for_each_instance(const Sweep& sweep, std::size_t min_distinct,
                       const std::function<void(const Word&, const Word&, std::size_t, const Word&,
                                                std::size_t)>& visit) {
  for (std::size_t len = sweep.options.wlen.lo; len <= sweep.options.wlen.hi; ++len) {
    for (const Word& w : canonical_words(len, sweep.alphabet, min_distinct)) {
      const auto sufs = suffixes(w);
      for (std::size_t k = sweep.options.reps.lo; k <= sweep.options.reps.hi; ++k)
        for (std::size_t l = sweep.options.reps.lo; l <= k; ++l)
          for (const Word& w1 : sufs)
            for (const Word& w2 : sufs)
              if (total_length(w1, w2, len, k, l) <= sweep.maxlen) visit(w, w1, k, w2, l);
    }
  }
}

VerifyReport verify_lemma2(const Sweep& sweep) {
  VerifyReport report{"lemma2", {}, 0};
  for_each_instance(sweep, 2, [&](const Word& w, const Word& w1, std::size_t k, const Word& w2,
                                  std::size_t l) {
    const bool both_empty = w1.empty() && w2.empty();
    const bool both_proper = !w1.empty() && !w2.empty() && w1.size() < w.size() && w2.size() < w.size();
    if (!both_empty && !both_proper) return;
    const PeriodicInstance inst(w, w1, k, w2, l);
    for (std::size_t k2 = l + 1; k2 < k; ++k2) {
      if (k + l < k2) continue;
      const std::size_t l2 = k + l - k2;
      if (l2 <= l || l2 >= k) continue;
      const InclusionVerdict v = check_period_change_inclusion(inst, k2, l2, sweep.options.limits);
      report.verdicts.push_back(
          {inst.describe() + " k'=" + std::to_string(k2) + " l'=" + std::to_string(l2), v.passed(),
           sizes_detail({{"subset", v.subset ? "yes" : "no"},
                         {"proper", v.proper ? "yes" : "no"},
                         {"witness", v.witness ? display(*v.witness) : "none"},
                         {"proof_witness_in_difference", v.proof_witness_in_difference ? "yes" : "no"}})});
    }
  });
  return report;
}

VerifyReport verify_lemma3(const Sweep& sweep) {
  VerifyReport report{"lemma3", {}, 0};
  for_each_instance(sweep, 2, [&](const Word& w, const Word& w1, std::size_t k, const Word& w2,
                                  std::size_t l) {
    if (l >= k || w1.empty() || w2.size() >= w1.size()) return;
    const PeriodicInstance inst(w, w1, k, w2, l);
    const InclusionVerdict v = check_period_nonchange_inclusion(inst, sweep.options.limits);
    report.verdicts.push_back({inst.describe(), v.passed(),
                               sizes_detail({{"subset", v.subset ? "yes" : "no"},
                                             {"proper", v.proper ? "yes" : "no"},
                                             {"witness", v.witness ? display(*v.witness) : "none"}})});
  });
  return report;
}

VerifyReport verify_lemma4(const Sweep& sweep) {
  VerifyReport report{"lemma4", {}, 0};
  for_each_instance(sweep, 2, [&](const Word& w, const Word& w1, std::size_t k, const Word& w2,
                                  std::size_t l) {
    const PeriodicInstance inst(w, w1, k, w2, l);
    const std::size_t U = inst.u().size(), V = inst.v().size(), n = inst.period();
    if (U == 0 || V == 0) return;
    const ResidualTable table(inst, sweep.options.limits);
    std::size_t comparisons = 0;
    std::string failure;
    for (std::size_t i = 1; i <= U; ++i) {
      for (std::size_t j = 1; j <= V; ++j) {
        const std::size_t gap = i > j ? i - j : j - i;
        auto residues = [n](std::size_t a, std::size_t b) {
          return std::pair{std::min(a % n, b % n), std::max(a % n, b % n)};
        };
        const auto residue = residues(i, j);
        for (std::size_t i2 = 1; i2 <= U && i2 < i + j; ++i2) {
          const std::size_t j2 = i + j - i2;
          if (j2 > V || (i2 == i && j2 == j)) continue;
          if (residues(i2, j2) != residue) continue;
          if ((i2 > j2 ? i2 - j2 : j2 - i2) > gap) continue;
          const ResidualVerdict v = residual_inclusion(table, i, j, i2, j2);
          ++comparisons;
          if (!v.passed() && failure.empty())
            failure = "(" + std::to_string(i) + "," + std::to_string(j) + ") vs (" +
                      std::to_string(i2) + "," + std::to_string(j2) + ")";
        }
      }
    }
    report.comparisons += comparisons;
    report.verdicts.push_back({inst.describe(), failure.empty(),
                               failure.empty() ? "comparisons=" + std::to_string(comparisons)
                                               : "failed " + failure});
  });
  return report;
}

VerifyReport verify_thm1(const Sweep& sweep) {
  VerifyReport report{"thm1", {}, 0};
  for (std::size_t len = sweep.options.wlen.lo; len <= sweep.options.wlen.hi; ++len) {
    if (len > sweep.alphabet.size()) continue;
    const Word w(std::string_view(sweep.alphabet).substr(0, len));
    const auto sufs = suffixes(w);
    for (std::size_t k = sweep.options.reps.lo; k <= sweep.options.reps.hi; ++k) {
      for (std::size_t l = sweep.options.reps.lo; l <= k; ++l) {
        for (std::size_t a = 1; a < sufs.size(); ++a) {
          for (std::size_t b = 1; b < sufs.size(); ++b) {
            if (total_length(sufs[a], sufs[b], len, k, l) > sweep.maxlen) continue;
            const PeriodicInstance inst(w, sufs[a], k, sufs[b], l);
            if (!formula_precondition_failure(inst).empty()) continue;
            const GridNfa nfa(inst.u(), inst.v());
            const Dfa subset = subset_construction(nfa, sweep.options.subset);
            const Dfa minimal = minimize(subset);
            const std::uint64_t predicted = formula_size(inst);
            bool passed = check_subset_discipline(subset, nfa).ok() && predicted == minimal.size();
            std::string detail = sizes_detail({{"formula", std::to_string(predicted)},
                                               {"pipeline", std::to_string(minimal.size())}});
            if (k > l) {
              const Dfa direct = build_periodic_dfa(inst);
              const bool same = equivalent(direct, minimal);
              passed = passed && direct.size() == predicted && same;
              detail += " direct=" + std::to_string(direct.size()) +
                        " equivalent=" + (same ? "yes" : "no");
            }
            report.verdicts.push_back({inst.describe(), passed, detail});
          }
        }
      }
    }
  }
  return report;
}

VerifyReport verify_thm2(const Sweep& sweep) {
  VerifyReport report{"thm2", {}, 0};
  std::vector<Word> bases = sweep.options.thm2_bases;
  if (bases.empty()) bases = {Word("aabb"), Word("aabbb"), Word("aabbcc")};
  for (const Word& w : bases) {
    const auto sufs = suffixes(w);
    for (std::size_t k = sweep.options.reps.lo; k <= sweep.options.reps.hi; ++k) {
      for (std::size_t l = sweep.options.reps.lo; l <= k; ++l) {
        for (const Word& w1 : sufs) {
          for (const Word& w2 : sufs) {
            if (total_length(w1, w2, w.size(), k, l) > sweep.maxlen) continue;
            const PeriodicInstance inst(w, w1, k, w2, l);
            if (inst.u().empty() || inst.v().empty()) continue;
            const QuadraticBoundReport q = check_quadratic_bound(inst, sweep.options.subset);
            bool passed = q.within_bound();
            if (q.sizes.formula_prediction)
              passed = passed && *q.sizes.formula_prediction == q.sizes.minimal_dfa_states;
            report.verdicts.push_back(
                {inst.describe(), passed,
                 sizes_detail({{"minimal", std::to_string(q.sizes.minimal_dfa_states)},
                               {"bound", std::to_string(q.bound)},
                               {"ratio", str(q.ratio)}})});
          }
        }
      }
    }
  }
  return report;
}

VerifyReport verify_thm3(const Sweep& sweep) {
  VerifyReport report{"thm3", {}, 0};
  for (std::size_t n = 1; n <= sweep.options.nmax; ++n) {
    const ExponentialPair pair = gen_exponential_pair(n);
    const GridNfa nfa(pair.u, pair.v);
    const Dfa subset = subset_construction(nfa, sweep.options.subset);
    const bool discipline = check_subset_discipline(subset, nfa).ok();

    bool sets_ok = true;
    for (std::size_t i = 1; i <= n; ++i) {
      const Word prefix = Word("a") + Word("aabb").repeated(i);
      const auto state = run(subset, prefix);
      sets_ok = sets_ok && state && subset.labels(*state) == claimed_duplication_set(n, i);
    }
    const auto entry = run(subset, filtering_entry_prefix(n));
    const bool entry_ok = entry && subset.labels(*entry) == claimed_filtering_entry_set(n) &&
                          subset.labels(*entry).size() == n + 1;

    // Probes: all but the all-ones choice are members; members reach distinct
    // subset states once the filtering stage is read.
    bool probes_ok = true;
    std::set<Dfa::State> reached;
    const std::size_t probe_count = std::size_t{1} << (n + 1);
    for (std::size_t bits = 0; bits < probe_count; ++bits) {
      std::vector<bool> choices(n + 1);
      for (std::size_t b = 0; b <= n; ++b) choices[b] = ((bits >> b) & 1U) != 0;
      const ProbeWord probe = gen_probe(n, choices);
      const bool all_ones = bits + 1 == probe_count;
      probes_ok = probes_ok && membership(probe.word, pair.u, pair.v) != all_ones &&
                  accepts(subset, probe.word) != all_ones;
      Word filtered = filtering_entry_prefix(n);
      for (bool c : choices) filtered += Word(c ? "bbbbaaaa" : "bbbabaaa");
      if (auto s = run(subset, filtered); s && !all_ones) reached.insert(*s);
    }
    probes_ok = probes_ok && reached.size() == probe_count - 1;

    const Dfa minimal = minimize(subset);
    const BigInt bound = exp_lower_bound(n);
    const bool above = BigInt(minimal.size()) >= bound;
    report.verdicts.push_back(
        {"exponential n=" + std::to_string(n),
         discipline && sets_ok && entry_ok && probes_ok && above,
         sizes_detail({{"subset", std::to_string(subset.size())},
                       {"minimal", std::to_string(minimal.size())},
                       {"bound", bound.str()},
                       {"duplication_sets", sets_ok ? "ok" : "mismatch"},
                       {"entry_labels", entry ? std::to_string(subset.labels(*entry).size()) : "none"},
                       {"probes", probes_ok ? "ok" : "mismatch"},
                       {"discipline", discipline ? "ok" : "violated"}})});

    const auto [nu, nv] = gen_quadratic_neighbor(n);
    const SizeReport neighbor = measure(nu, nv, sweep.options.subset);
    const std::size_t quad = 2 * (nu.size() + 1) * (nv.size() + 1);
    report.verdicts.push_back({"neighbor n=" + std::to_string(n), neighbor.minimal_dfa_states <= quad,
                               sizes_detail({{"minimal", std::to_string(neighbor.minimal_dfa_states)},
                                             {"bound", std::to_string(quad)}})});
  }
  return report;
}

void for_each_word(std::size_t length, std::string_view letters,
                   const std::function<void(const Word&)>& visit) {
  WordBuilder b;
  std::function<void()> rec = [&] {
    if (b.size() == length) {
      visit(b.build());
      return;
    }
    for (char c : letters) {
      b.push_back(c);
      rec();
      b.pop_back();
    }
  };
  rec();
}

VerifyReport verify_eq1(const Sweep& sweep) {
  VerifyReport report{"eq1", {}, 0};
  for (std::size_t m = 1; m <= sweep.maxlen; ++m) {
    for (std::size_t n = 1; n <= m; ++n) {
      BigInt worst_gap = -1;
      std::size_t pairs = 0;
      std::string failure;
      const BigInt bound = eq1_bound(m, n);
      for_each_word(m, sweep.alphabet, [&](const Word& u) {
        for_each_word(n, sweep.alphabet, [&](const Word& v) {
          const GridNfa nfa(u, v);
          const Dfa subset = subset_construction(nfa, sweep.options.subset);
          ++pairs;
          // The bound counts the empty subset, which is never built here.
          const BigInt counted = BigInt(subset.size()) + 1;
          if (counted > bound && failure.empty())
            failure = display(u) + "," + display(v) + " subset=" + std::to_string(subset.size());
          if (worst_gap < 0 || bound - counted < worst_gap) worst_gap = bound - counted;
        });
      });
      report.comparisons += pairs;
      report.verdicts.push_back(
          {"|u|=" + std::to_string(m) + " |v|=" + std::to_string(n), failure.empty(),
           failure.empty() ? sizes_detail({{"pairs", std::to_string(pairs)},
                                           {"bound", bound.str()},
                                           {"min_slack", worst_gap.str()}})
                           : "exceeded " + failure});
    }
  }
  return report;
}

}  // namespace

Range parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    const std::size_t x = parse_count(text, text);
    return {x, x};
  }
  Range r{parse_count(text.substr(0, dots), text), parse_count(text.substr(dots + 2), text)};
  if (r.lo > r.hi) throw ParseError("range: lower end exceeds upper end", 0);
  return r;
}

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const auto& v) { return !v.passed; }));
}

const std::vector<std::string>& verify_scopes() {
  static const std::vector<std::string> scopes{"lemma2", "lemma3", "lemma4", "thm1",
                                               "thm2",   "thm3",   "eq1"};
  return scopes;
}

std::size_t default_maxlen(std::string_view scope) {
  if (scope == "eq1") return 6;
  if (scope == "thm1") return 24;
  if (scope == "thm2") return 30;
  return 22;
}

std::string default_alphabet(std::string_view scope) {
  if (scope == "eq1") return "ab";
  if (scope == "thm1") return "abcd";
  return "abc";
}

VerifyReport verify_scope(std::string_view scope, const SweepOptions& options) {
  const Sweep sweep{options.maxlen.value_or(default_maxlen(scope)),
                    options.alphabet.value_or(default_alphabet(scope)), options};
  Alphabet{sweep.alphabet};  // validates the letters
  if (scope == "lemma2") return verify_lemma2(sweep);
  if (scope == "lemma3") return verify_lemma3(sweep);
  if (scope == "lemma4") return verify_lemma4(sweep);
  if (scope == "thm1") return verify_thm1(sweep);
  if (scope == "thm2") return verify_thm2(sweep);
  if (scope == "thm3") return verify_thm3(sweep);
  if (scope == "eq1") return verify_eq1(sweep);
  throw PreconditionError("verify: unknown scope '" + std::string(scope) + "'");
}

std::vector<Word> canonical_words(std::size_t length, std::string_view letters,
                                  std::size_t min_distinct) {
  std::vector<Word> out;
  WordBuilder b;
  std::function<void(std::size_t)> rec = [&](std::size_t used) {
    if (b.size() == length) {
      if (used >= min_distinct) out.push_back(b.build());
      return;
    }
    for (std::size_t x = 0; x < letters.size() && x <= used; ++x) {
      b.push_back(letters[x]);
      rec(std::max(used, x + 1));
      b.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Word> suffixes(const Word& w) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= w.size(); ++len) out.push_back(w.suffix(len));
  return out;
}

std::string to_json(const std::vector<VerifyReport>& reports) {
  nlohmann::ordered_json doc;
  doc["schema"] = kVerifySchema;
  bool ok = true;
  nlohmann::ordered_json scopes = nlohmann::ordered_json::array();
  for (const VerifyReport& r : reports) {
    ok = ok && r.ok();
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const InstanceVerdict& v : r.verdicts)
      verdicts.push_back({{"instance", v.instance}, {"passed", v.passed}, {"detail", v.detail}});
    scopes.push_back({{"scope", r.scope},
                      {"instances", r.verdicts.size()},
                      {"failures", r.failures()},
                      {"comparisons", r.comparisons},
                      {"verdicts", std::move(verdicts)}});
  }
  doc["ok"] = ok;
  doc["scopes"] = std::move(scopes);
  return doc.dump(2) + "\n";
}

}  // namespace shuffle
