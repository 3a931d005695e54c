#include "shuffle/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shuffle/errors.hpp"

namespace shuffle {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kLambda = "\xCE\xBB";  // λ in UTF-8

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::size_t max_letters)
      : text_(text), max_(max_letters) {}

  std::string parse() {
    std::string out = sequence();
    if (pos_ != text_.size()) fail(text_[pos_] == ')' ? "unbalanced ')'" : "unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("word expression: " + message + " at offset " + std::to_string(pos_), pos_);
  }

  std::string sequence() {
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != ')') {
      std::string part = atom();
      if (out.size() + part.size() > max_) fail("expansion exceeds " + std::to_string(max_) + " letters");
      out += part;
    }
    return out;
  }

  std::string atom() {
    std::string body;
    if (text_.substr(pos_).starts_with(kLambda)) {
      pos_ += kLambda.size();
    } else if (is_symbol(text_[pos_])) {
      body = text_[pos_++];
    } else if (text_[pos_] == '(') {
      const std::size_t open = pos_++;
      body = sequence();
      if (pos_ >= text_.size()) {
        pos_ = open;
        fail("unbalanced '('");
      }
      ++pos_;
    } else {
      fail("unexpected character");
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      const std::size_t exponent = number();
      if (!body.empty() && exponent > max_ / body.size())
        fail("expansion exceeds " + std::to_string(max_) + " letters");
      std::string repeated;
      repeated.reserve(body.size() * exponent);
      for (std::size_t r = 0; r < exponent; ++r) repeated += body;
      body = std::move(repeated);
    }
    return body;
  }

  std::size_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (start == pos_ || ec != std::errc{}) {
      pos_ = start;
      fail("expected exponent");
    }
    (void)ptr;
    return value;
  }

  std::string_view text_;
  std::size_t max_;
  std::size_t pos_ = 0;
};

std::string node_id(GridState s) { return "q_" + std::to_string(s.i) + "_" + std::to_string(s.j); }

std::string grid_label(GridState s) {
  return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

ordered_json big_to_json(const BigInt& value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max())
    return value.convert_to<std::uint64_t>();
  return value.str();
}

ordered_json state_json(GridState s) { return ordered_json::array({s.i, s.j}); }

}  // namespace

Word parse_word_expression(std::string_view text, std::size_t max_letters) {
  return Word(ExpressionParser(text, max_letters).parse());
}

PeriodicInstance parse_instance_description(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',') {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    const std::size_t end = std::min(text.find_first_of(" \t,", pos), text.size());
    const std::string_view token = text.substr(start, end - start);
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) throw ParseError("instance: expected key=value", start);
    const std::string key(token.substr(0, eq));
    if (key != "w" && key != "w1" && key != "w2" && key != "k" && key != "l")
      throw ParseError("instance: unknown key '" + key + "'", start);
    if (fields.contains(key)) throw ParseError("instance: duplicate key '" + key + "'", start);
    fields[key] = std::string(token.substr(eq + 1));
    pos = end;
  }
  for (const char* key : {"w", "w1", "k", "w2", "l"})
    if (!fields.contains(key)) throw ParseError(std::string("instance: missing key '") + key + "'", text.size());

  auto word = [&](const std::string& key) {
    try {
      return parse_word_expression(fields[key]);
    } catch (const ParseError& e) {
      throw ParseError("instance: " + key + ": " + e.what(), text.find(key + "=") + key.size() + 1 + e.position());
    }
  };
  auto count = [&](const std::string& key) {
    const std::string& value = fields[key];
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
      throw ParseError("instance: " + key + " must be a non-negative integer", text.find(key + "="));
    return out;
  };
  return PeriodicInstance(word("w"), word("w1"), count("k"), word("w2"), count("l"));
}

std::vector<std::vector<GridState>> active_states(const GridNfa& nfa, const Word& z) {
  std::vector<std::vector<GridState>> out{{nfa.initial()}};
  for (Symbol a : z) {
    std::set<GridState> next;
    for (GridState s : out.back())
      for (GridState t : nfa.successors(s, a)) next.insert(t);
    out.emplace_back(next.begin(), next.end());
  }
  return out;
}

std::string to_dot(const GridNfa& nfa, const GridDotOptions& options) {
  std::set<GridState> shaded;
  if (options.shade_areas)
    for (const NondetArea& area : find_areas(nfa))
      for (GridState s : area.states()) shaded.insert(s);
  std::set<GridState> bulleted;
  if (options.probe)
    for (const auto& step : active_states(nfa, *options.probe)) bulleted.insert(step.begin(), step.end());
  const std::set<std::pair<GridState, GridState>> dashed(options.dashed.begin(), options.dashed.end());

  const std::size_t m = nfa.u().size(), n = nfa.v().size();
  std::ostringstream out;
  out << "digraph shuffle_nfa {\n"
      << "  graph [layout=neato, splines=true, overlap=true];\n"
      << "  node [shape=circle, fontsize=10, width=0.55, fixedsize=true];\n"
      << "  edge [fontsize=10];\n"
      << "  legend [shape=note, fixedsize=false, label=\"u = " << escape(display(nfa.u()))
      << "\\lv = " << escape(display(nfa.v()))
      << "\\lstate (i,j): i letters of u and j letters of v remain\\linitial (|u|,|v|), final (0,0)\\l";
  if (options.shade_areas) out << "grey: nondeterministic areas\\l";
  if (options.probe) out << "\xE2\x80\xA2: active on " << escape(display(*options.probe)) << "\\l";
  out << "\", pos=\"" << (m + 2) * 1.2 << ",0!\"];\n";
  out << "  start [shape=point, pos=\"-0.8,0.8!\"];\n";
  out << "  start -> " << node_id(nfa.initial()) << ";\n";
  for (std::size_t i = m + 1; i-- > 0;) {
    for (std::size_t j = n + 1; j-- > 0;) {
      const GridState s{i, j};
      out << "  " << node_id(s) << " [label=\"" << grid_label(s);
      if (bulleted.contains(s)) out << "\\n\xE2\x80\xA2";
      out << "\", pos=\"" << (m - i) * 1.2 << "," << -static_cast<double>(n - j) * 1.2 << "!\"";
      if (s == GridNfa::final_state()) out << ", shape=doublecircle";
      if (shaded.contains(s)) out << ", style=filled, fillcolor=gray80";
      out << "];\n";
    }
  }
  auto edge = [&](GridState from, GridState to, Symbol a) {
    out << "  " << node_id(from) << " -> " << node_id(to) << " [label=\"" << a << "\"";
    if (dashed.contains({from, to})) out << ", style=dashed";
    out << "];\n";
  };
  for (std::size_t i = m + 1; i-- > 0;) {
    for (std::size_t j = n + 1; j-- > 0;) {
      if (auto a = nfa.u_letter(i)) edge({i, j}, {i - 1, j}, *a);
      if (auto b = nfa.v_letter(j)) edge({i, j}, {i, j - 1}, *b);
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph shuffle_dfa {\n"
      << "  rankdir=LR;\n"
      << "  node [shape=circle, fontsize=10];\n"
      << "  start [shape=point];\n"
      << "  start -> s" << dfa.initial() << ";\n";
  for (Dfa::State s = 0; s < dfa.size(); ++s) {
    out << "  s" << s << " [label=\"" << s;
    if (dfa.has_labels()) {
      out << "\\n{";
      const auto& labels = dfa.labels(s);
      for (std::size_t x = 0; x < labels.size(); ++x) out << (x ? "," : "") << grid_label(labels[x]);
      out << "}";
    }
    out << "\"";
    if (dfa.is_final(s)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (Dfa::State s = 0; s < dfa.size(); ++s)
    for (std::size_t a = 0; a < dfa.alphabet().size(); ++a)
      if (const Dfa::State t = dfa.target(s, a); t != Dfa::kNoState)
        out << "  s" << s << " -> s" << t << " [label=\"" << dfa.alphabet()[a] << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string to_json(const Dfa& dfa) {
  ordered_json doc;
  doc["schema"] = kDfaSchema;
  doc["alphabet"] = dfa.alphabet().letters();
  doc["states"] = dfa.size();
  doc["initial"] = dfa.initial();
  ordered_json finals = ordered_json::array();
  for (Dfa::State s = 0; s < dfa.size(); ++s)
    if (dfa.is_final(s)) finals.push_back(s);
  doc["finals"] = std::move(finals);
  ordered_json transitions = ordered_json::array();
  for (Dfa::State s = 0; s < dfa.size(); ++s)
    for (std::size_t a = 0; a < dfa.alphabet().size(); ++a)
      if (const Dfa::State t = dfa.target(s, a); t != Dfa::kNoState)
        transitions.push_back(ordered_json::array({s, std::string(1, dfa.alphabet()[a]), t}));
  doc["transitions"] = std::move(transitions);
  if (dfa.has_labels()) {
    ordered_json labels = ordered_json::array();
    for (Dfa::State s = 0; s < dfa.size(); ++s) {
      ordered_json set = ordered_json::array();
      for (GridState g : dfa.labels(s)) set.push_back(state_json(g));
      labels.push_back(std::move(set));
    }
    doc["labels"] = std::move(labels);
  }
  return doc.dump(2) + "\n";
}

Dfa dfa_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("dfa json: ") + e.what(), e.byte);
  }
  try {
    if (doc.at("schema").get<std::string>() != kDfaSchema)
      throw ParseError("dfa json: unsupported schema", 0);
    Dfa dfa{Alphabet(doc.at("alphabet").get<std::string>())};
    const auto states = doc.at("states").get<std::size_t>();
    for (std::size_t s = 0; s < states; ++s) dfa.add_state();
    auto state = [&](const ordered_json& value) {
      const auto s = value.get<std::size_t>();
      if (s >= states) throw ParseError("dfa json: state index out of range", 0);
      return static_cast<Dfa::State>(s);
    };
    dfa.set_initial(state(doc.at("initial")));
    for (const auto& f : doc.at("finals")) dfa.set_final(state(f));
    for (const auto& t : doc.at("transitions")) {
      const auto letter = t.at(1).get<std::string>();
      if (letter.size() != 1 || !dfa.alphabet().contains(letter[0]))
        throw ParseError("dfa json: transition letter not in alphabet", 0);
      dfa.set_transition(state(t.at(0)), letter[0], state(t.at(2)));
    }
    if (doc.contains("labels")) {
      const auto& labels = doc.at("labels");
      if (labels.size() != states) throw ParseError("dfa json: labels do not match states", 0);
      for (std::size_t s = 0; s < states; ++s) {
        std::vector<GridState> set;
        for (const auto& g : labels[s]) set.push_back({g.at(0).get<std::size_t>(), g.at(1).get<std::size_t>()});
        dfa.set_labels(static_cast<Dfa::State>(s), std::move(set));
      }
    }
    return dfa;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("dfa json: ") + e.what(), 0);
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("dfa json: ") + e.what(), 0);
  }
}

std::string to_json(const GridNfa& nfa, bool include_areas) {
  ordered_json doc;
  doc["schema"] = kNfaSchema;
  doc["convention"] = "state [i,j]: i letters of u and j letters of v remain";
  doc["u"] = nfa.u().str();
  doc["v"] = nfa.v().str();
  doc["alphabet"] = nfa.alphabet().letters();
  doc["initial"] = state_json(nfa.initial());
  doc["final"] = state_json(GridNfa::final_state());
  ordered_json states = ordered_json::array();
  ordered_json transitions = ordered_json::array();
  for (std::size_t i = nfa.u().size() + 1; i-- > 0;) {
    for (std::size_t j = nfa.v().size() + 1; j-- > 0;) {
      states.push_back(state_json({i, j}));
      if (auto a = nfa.u_letter(i))
        transitions.push_back(ordered_json::array({state_json({i, j}), std::string(1, *a), state_json({i - 1, j})}));
      if (auto b = nfa.v_letter(j))
        transitions.push_back(ordered_json::array({state_json({i, j}), std::string(1, *b), state_json({i, j - 1})}));
    }
  }
  doc["states"] = std::move(states);
  doc["transitions"] = std::move(transitions);
  if (include_areas) {
    ordered_json areas = ordered_json::array();
    for (const NondetArea& area : find_areas(nfa))
      areas.push_back({{"letter", std::string(1, area.letter)},
                       {"top", state_json(area.top)},
                       {"bottom", state_json(area.bottom)}});
    doc["areas"] = std::move(areas);
  }
  return doc.dump(2) + "\n";
}

std::string to_json(const SizeReport& report) {
  ordered_json doc;
  doc["schema"] = kSizeReportSchema;
  doc["u"] = report.u.str();
  doc["v"] = report.v.str();
  doc["nfa_states"] = report.nfa_states;
  doc["subset_dfa_states"] = report.subset_dfa_states;
  doc["minimal_dfa_states"] = report.minimal_dfa_states;
  doc["formula_prediction"] =
      report.formula_prediction ? big_to_json(*report.formula_prediction) : ordered_json(nullptr);
  doc["eq1_bound"] = big_to_json(report.eq1_bound);
  return doc.dump(2) + "\n";
}

namespace {

constexpr std::string_view kCsvHeader =
    "n,family,|u|,|v|,nfa,subset_dfa,minimal_dfa,predicted_or_bound,wall_time_ms\n";

std::string optional_cell(const std::optional<std::size_t>& value) {
  return value ? std::to_string(*value) : std::string();
}

}  // namespace

std::string to_csv(const ExperimentResult& result, bool with_timing) {
  std::ostringstream out;
  out << kCsvHeader;
  for (const ExperimentRow& row : result.rows) {
    out << row.n << ',' << row.family << ',' << row.u_len << ',' << row.v_len << ','
        << optional_cell(row.nfa_states) << ',' << optional_cell(row.subset_dfa_states) << ','
        << optional_cell(row.minimal_dfa_states) << ',' << row.predicted_or_bound.str() << ','
        << std::fixed << std::setprecision(3) << (with_timing ? row.wall_time_ms : 0.0) << '\n';
  }
  return out.str();
}

std::string to_csv(const SizeReport& report) {
  std::ostringstream out;
  out << kCsvHeader << ",pair," << report.u.size() << ',' << report.v.size() << ','
      << report.nfa_states << ',' << report.subset_dfa_states << ',' << report.minimal_dfa_states
      << ',' << (report.formula_prediction ? report.formula_prediction->str() : std::string())
      << ",0.000\n";
  return out.str();
}

}  // namespace shuffle
