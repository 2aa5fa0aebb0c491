#include "tmdyn/machine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tmdyn {

namespace {

using Kind = MachineSpecError::Kind;

std::string where(int line, int column) {
  if (line == 0) return "";
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
}

void strip_trailing_blanks(std::vector<Symbol>& word) {
  while (!word.empty() && word.back() == kBlank) word.pop_back();
}

}  // namespace

MachineSpecError::MachineSpecError(Kind kind, const std::string& message, int line, int column)
    : std::runtime_error(where(line, column) + message), kind_(kind), line_(line), column_(column) {}

TuringMachine::TuringMachine(const MachineDefinition& def) {
  if (def.blank.empty()) throw MachineSpecError(Kind::Declaration, "no blank symbol declared");
  if (def.symbols.empty()) throw MachineSpecError(Kind::Declaration, "no tape symbols declared");
  if (def.states.empty()) throw MachineSpecError(Kind::Declaration, "no states declared");
  if (def.initial.empty()) throw MachineSpecError(Kind::Declaration, "no initial state declared");

  if (std::find(def.symbols.begin(), def.symbols.end(), def.blank) == def.symbols.end()) {
    throw MachineSpecError(Kind::UndeclaredSymbol,
                           "blank symbol '" + def.blank + "' is not among the tape symbols");
  }
  symbols_.push_back(def.blank);
  for (const auto& s : def.symbols) {
    if (s != def.blank) symbols_.push_back(s);
  }
  states_ = def.states;

  std::set<std::string> seen;
  for (const auto& s : def.symbols) {
    if (!seen.insert(s).second) throw MachineSpecError(Kind::Declaration, "duplicate symbol '" + s + "'");
  }
  for (const auto& q : def.states) {
    if (q == kEraseStateToken) {
      throw MachineSpecError(Kind::Declaration, "'!' is reserved and cannot name a state");
    }
    if (!seen.insert(q).second) {
      throw MachineSpecError(Kind::Declaration, "name '" + q + "' declared twice (symbols and states must be distinct)");
    }
  }

  auto init = find_state(def.initial);
  if (!init) throw MachineSpecError(Kind::UndeclaredState, "initial state '" + def.initial + "' is not declared");
  initial_ = *init;

  final_.assign(states_.size(), false);
  for (const auto& f : def.finals) {
    auto q = find_state(f);
    if (!q) throw MachineSpecError(Kind::UndeclaredState, "final state '" + f + "' is not declared");
    final_[q->index] = true;
  }

  table_.assign(states_.size() * symbols_.size(), std::nullopt);
  for (const auto& rule : def.rules) {
    auto q = find_state(rule.state);
    if (!q) throw MachineSpecError(Kind::UndeclaredState, "undeclared state '" + rule.state + "'", rule.line, rule.column);
    auto a = find_symbol(rule.read);
    if (!a) throw MachineSpecError(Kind::UndeclaredSymbol, "undeclared symbol '" + rule.read + "'", rule.line, rule.column);
    Transition t;
    if (rule.next != kEraseStateToken) {
      auto next = find_state(rule.next);
      if (!next) throw MachineSpecError(Kind::UndeclaredState, "undeclared state '" + rule.next + "'", rule.line, rule.column);
      t.next = *next;
    }
    auto w = find_symbol(rule.write);
    if (!w) throw MachineSpecError(Kind::UndeclaredSymbol, "undeclared symbol '" + rule.write + "'", rule.line, rule.column);
    t.write = *w;
    t.move = rule.move;
    if (final_[q->index]) {
      throw MachineSpecError(Kind::FinalStateTransition,
                             "transition out of final state '" + rule.state + "'", rule.line, rule.column);
    }
    auto& slot = table_[q->index * symbols_.size() + a->index];
    if (slot) {
      throw MachineSpecError(Kind::DuplicateTransition,
                             "second rule for (" + rule.state + ", " + rule.read + "); machines must be deterministic",
                             rule.line, rule.column);
    }
    slot = t;
  }

  for (std::uint32_t q = 0; q < states_.size(); ++q) {
    if (final_[q]) continue;
    for (std::uint32_t a = 0; a < symbols_.size(); ++a) {
      if (!table_[q * symbols_.size() + a]) {
        throw MachineSpecError(Kind::MissingTransition,
                               "missing transition for (" + states_[q] + ", " + symbols_[a] + ")");
      }
    }
  }
}

std::optional<Symbol> TuringMachine::find_symbol(std::string_view name) const {
  for (std::uint32_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == name) return Symbol{i};
  }
  return std::nullopt;
}

std::optional<State> TuringMachine::find_state(std::string_view name) const {
  for (std::uint32_t i = 0; i < states_.size(); ++i) {
    if (states_[i] == name) return State{i};
  }
  return std::nullopt;
}

const Transition* TuringMachine::transition(State q, Symbol a) const {
  const auto& slot = table_.at(q.index * symbols_.size() + a.index);
  return slot ? &*slot : nullptr;
}

MachineDefinition TuringMachine::definition() const {
  MachineDefinition def;
  def.blank = symbols_.front();
  def.symbols = symbols_;
  def.states = states_;
  def.initial = states_[initial_.index];
  for (std::uint32_t q = 0; q < states_.size(); ++q) {
    if (final_[q]) def.finals.push_back(states_[q]);
  }
  for (std::uint32_t q = 0; q < states_.size(); ++q) {
    for (std::uint32_t a = 0; a < symbols_.size(); ++a) {
      const auto* t = transition(State{q}, Symbol{a});
      if (!t) continue;
      def.rules.push_back({states_[q], symbols_[a],
                           t->next ? states_[t->next->index] : std::string(kEraseStateToken),
                           symbols_[t->write.index], t->move, 0, 0});
    }
  }
  return def;
}

TuringMachine parse_tm(std::string_view text) {
  MachineDefinition def;
  std::set<std::string> directives_seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    struct Token {
      std::string text;
      int column;
    };
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const std::string& directive = tokens[0].text;
    const auto syntax = [&](const std::string& message, const Token& at) {
      return MachineSpecError(Kind::Syntax, message, line_no, at.column);
    };
    const auto once = [&] {
      if (!directives_seen.insert(directive).second) {
        throw MachineSpecError(Kind::Declaration, "directive '" + directive + "' given twice", line_no,
                               tokens[0].column);
      }
    };
    const auto rest = [&] {
      std::vector<std::string> out;
      for (std::size_t i = 1; i < tokens.size(); ++i) out.push_back(tokens[i].text);
      return out;
    };

    if (directive == "blank" || directive == "initial") {
      once();
      if (tokens.size() != 2) throw syntax("'" + directive + "' takes exactly one name", tokens[0]);
      (directive == "blank" ? def.blank : def.initial) = tokens[1].text;
    } else if (directive == "symbols" || directive == "states") {
      once();
      if (tokens.size() < 2) throw syntax("'" + directive + "' needs at least one name", tokens[0]);
      (directive == "symbols" ? def.symbols : def.states) = rest();
    } else if (directive == "final") {
      once();
      def.finals = rest();
    } else if (directive == "rule") {
      if (def.symbols.empty() || def.states.empty()) {
        throw MachineSpecError(Kind::Declaration, "rule before 'symbols' and 'states' are declared", line_no,
                               tokens[0].column);
      }
      if (tokens.size() != 7 || tokens[3].text != "->") {
        throw syntax("expected 'rule <q> <sym> -> <q'> <sym'> <L|R|S>'",
                     tokens.size() > 3 ? tokens[3] : tokens.back());
      }
      const auto& mv = tokens[6].text;
      Move move;
      if (mv == "L") {
        move = Move::Left;
      } else if (mv == "R") {
        move = Move::Right;
      } else if (mv == "S") {
        move = Move::Stay;
      } else {
        throw syntax("move must be L, R or S, got '" + mv + "'", tokens[6]);
      }
      def.rules.push_back({tokens[1].text, tokens[2].text, tokens[4].text, tokens[5].text, move, line_no,
                           tokens[0].column});
    } else {
      throw syntax("unknown directive '" + directive + "'", tokens[0]);
    }
    if (eol == text.size()) break;
  }
  return TuringMachine(def);
}

std::string format_tm(const TuringMachine& m) {
  const auto def = m.definition();
  const auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += " " + n;
    return out;
  };
  std::string out = "blank " + def.blank + "\nsymbols" + join(def.symbols) + "\nstates" + join(def.states) +
                    "\ninitial " + def.initial + "\n";
  if (!def.finals.empty()) out += "final" + join(def.finals) + "\n";
  for (const auto& r : def.rules) {
    out += "rule " + r.state + " " + r.read + " -> " + r.next + " " + r.write + " " +
           std::string(1, static_cast<char>(r.move)) + "\n";
  }
  return out;
}

TapeConfiguration TapeConfiguration::canonical() const {
  TapeConfiguration c = *this;
  strip_trailing_blanks(c.left);
  strip_trailing_blanks(c.right);
  return c;
}

bool operator==(const TapeConfiguration& a, const TapeConfiguration& b) {
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  return ca.left == cb.left && ca.head == cb.head && ca.state == cb.state && ca.right == cb.right;
}

bool is_halting(const TuringMachine& m, const TapeConfiguration& c) {
  return !c.state || m.is_final(*c.state);
}

StepResult tm_step(const TuringMachine& m, const TapeConfiguration& c) {
  if (is_halting(m, c)) return Halted{c};
  const Transition& t = *m.transition(*c.state, c.head);
  TapeConfiguration next = c;
  next.head = t.write;
  next.state = t.next;
  const auto pull = [](std::vector<Symbol>& side) {
    if (side.empty()) return kBlank;
    const Symbol s = side.front();
    side.erase(side.begin());
    return s;
  };
  switch (t.move) {
    case Move::Left:
      next.right.insert(next.right.begin(), next.head);
      next.head = pull(next.left);
      break;
    case Move::Right:
      next.left.insert(next.left.begin(), next.head);
      next.head = pull(next.right);
      break;
    case Move::Stay:
      break;
  }
  return next.canonical();
}

Trajectory tm_run(const TuringMachine& m, const TapeConfiguration& c0, std::size_t t_max) {
  Trajectory run;
  run.configurations.push_back(c0);
  for (std::size_t t = 0; t < t_max && !is_halting(m, run.configurations.back()); ++t) {
    run.configurations.push_back(std::get<TapeConfiguration>(tm_step(m, run.configurations.back())));
  }
  run.halted = is_halting(m, run.configurations.back());
  return run;
}

std::vector<Symbol> parse_word(const TuringMachine& m, std::string_view text) {
  std::vector<Symbol> word;
  if (text == "_" || text.empty()) return word;
  const auto lookup = [&](std::string_view name) {
    auto s = m.find_symbol(name);
    if (!s) throw std::invalid_argument("unknown tape symbol '" + std::string(name) + "'");
    return *s;
  };
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      word.push_back(lookup(text.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return word;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    Symbol best_symbol;
    for (std::uint32_t s = 0; s < m.symbol_count(); ++s) {
      const auto& name = m.symbol_name(Symbol{s});
      if (name.size() > best && text.substr(i, name.size()) == name) {
        best = name.size();
        best_symbol = Symbol{s};
      }
    }
    if (best == 0) throw std::invalid_argument("cannot split '" + std::string(text) + "' into tape symbols");
    word.push_back(best_symbol);
    i += best;
  }
  return word;
}

std::string format_word(const TuringMachine& m, const std::vector<Symbol>& word) {
  if (word.empty()) return "_";
  bool single = true;
  for (const auto& name : m.symbol_names()) {
    // one UTF-8 code point
    std::size_t points = 0;
    for (unsigned char ch : name) points += (ch & 0xC0) != 0x80;
    single = single && points == 1;
  }
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) out += ',';
    out += m.symbol_name(word[i]);
  }
  return out;
}

TapeConfiguration parse_configuration(const TuringMachine& m, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> parts;
  for (std::string token; in >> token;) parts.push_back(token);
  if (parts.size() != 4) {
    throw std::invalid_argument("configuration must be '<left-word> <state> <head-sym> <right-word>'");
  }
  TapeConfiguration c;
  c.left = parse_word(m, parts[0]);
  std::reverse(c.left.begin(), c.left.end());
  if (parts[1] != kEraseStateToken) {
    auto q = m.find_state(parts[1]);
    if (!q) throw std::invalid_argument("unknown state '" + parts[1] + "'");
    c.state = *q;
  }
  auto head = m.find_symbol(parts[2]);
  if (!head) throw std::invalid_argument("unknown head symbol '" + parts[2] + "'");
  c.head = *head;
  c.right = parse_word(m, parts[3]);
  return c;
}

std::string format_configuration(const TuringMachine& m, const TapeConfiguration& c) {
  std::vector<Symbol> left(c.left.rbegin(), c.left.rend());
  return format_word(m, left) + " " + (c.state ? m.state_name(*c.state) : std::string(kEraseStateToken)) + " " +
         m.symbol_name(c.head) + " " + format_word(m, c.right);
}

}  // namespace tmdyn
