#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "branchlab/errors.hpp"
#include "branchlab/format.hpp"
#include "branchlab/scenario.hpp"

namespace branchlab {

namespace {

constexpr int kMaxFormulaDepth = 256;

enum class TokenKind { kIdent, kNumber, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
        continue;
      }
      if (is_ident_start(c)) {
        tokens.push_back(lex_ident());
        continue;
      }
      if (is_digit(c)) {
        tokens.push_back(lex_number());
        continue;
      }
      if (is_punct(c)) {
        tokens.push_back(Token{TokenKind::kPunct, std::string(1, c), line_, column_});
        advance();
        continue;
      }
      throw ParseError(line_, column_, std::string(1, c), {},
                       "ParseError: unexpected character '" + std::string(1, c) + "'");
    }
    tokens.push_back(Token{TokenKind::kEnd, "<end>", line_, column_});
    return tokens;
  }

 private:
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_punct(char c) {
    return c == '{' || c == '}' || c == '(' || c == ')' || c == '[' || c == ']' ||
           c == ':' || c == ';' || c == ',' || c == '=' || c == '@' || c == '+' || c == '-';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token lex_ident() {
    Token token{TokenKind::kIdent, "", line_, column_};
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      token.text.push_back(text_[pos_]);
      advance();
    }
    return token;
  }

  Token lex_number() {
    Token token{TokenKind::kNumber, "", line_, column_};
    const auto take_digits = [&] {
      while (pos_ < text_.size() && is_digit(text_[pos_])) {
        token.text.push_back(text_[pos_]);
        advance();
      }
    };
    take_digits();
    if (pos_ < text_.size() && text_[pos_] == '.' && pos_ + 1 < text_.size() &&
        is_digit(text_[pos_ + 1])) {
      token.text.push_back('.');
      advance();
      take_digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) {
        ++probe;
      }
      if (probe < text_.size() && is_digit(text_[probe])) {
        while (pos_ < probe) {
          token.text.push_back(text_[pos_]);
          advance();
        }
        take_digits();
      }
    }
    return token;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, const Tolerances& tol)
      : tokens_(Lexer(text).run()), tol_(tol) {}

  ParsedScenario parse_document() {
    while (!at_end()) {
      parse_statement();
    }
    resolve_formula_labels();
    return ParsedScenario{std::move(scenario_), std::move(warnings_)};
  }

  ModalFormula parse_formula_document() {
    ModalFormula formula = parse_formula(0);
    if (!at_end()) {
      fail({"end of input"});
    }
    return formula;
  }

 private:
  struct PendingLabel {
    std::string label;
    int line;
    int column;
  };

  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }
  bool at_end() const { return peek().kind == TokenKind::kEnd; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& token = peek();
    std::string message = "ParseError at " + std::to_string(token.line) + ":" +
                          std::to_string(token.column) + ": unexpected '" + token.text + "'";
    if (!expected.empty()) {
      message += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        message += (i == 0 ? "" : " | ") + expected[i];
      }
    }
    throw ParseError(token.line, token.column, token.text, std::move(expected), message);
  }

  [[noreturn]] void fail_resolve(const Token& token, const std::string& message) const {
    throw ResolveError(token.line, token.column, token.text,
                       "ResolveError at " + std::to_string(token.line) + ":" +
                           std::to_string(token.column) + ": " + message);
  }

  bool peek_punct(char c) const {
    return peek().kind == TokenKind::kPunct && peek().text[0] == c;
  }

  Token expect_punct(char c) {
    if (!peek_punct(c)) {
      fail({std::string("'") + c + "'"});
    }
    return advance();
  }

  Token expect_ident(const char* what) {
    if (peek().kind != TokenKind::kIdent) {
      fail({what});
    }
    return advance();
  }

  bool peek_word(std::string_view word) const {
    return peek().kind == TokenKind::kIdent && peek().text == word;
  }

  Token expect_word(std::string_view word) {
    if (!peek_word(word)) {
      fail({std::string("'") + std::string(word) + "'"});
    }
    return advance();
  }

  double expect_number_value() {
    if (peek().kind != TokenKind::kNumber) {
      fail({"number"});
    }
    const Token token = advance();
    double value = 0.0;
    if (!parse_double(token.text, value)) {
      throw ParseError(token.line, token.column, token.text, {"number"},
                       "ParseError at " + std::to_string(token.line) + ":" +
                           std::to_string(token.column) + ": number '" + token.text +
                           "' is out of range");
    }
    return value;
  }

  double expect_signed_number() {
    double sign = 1.0;
    if (peek_punct('-')) {
      advance();
      sign = -1.0;
    } else if (peek_punct('+')) {
      advance();
    }
    return sign * expect_number_value();
  }

  std::uint64_t expect_seed() {
    if (peek().kind != TokenKind::kNumber) {
      fail({"non-negative integer seed"});
    }
    const Token token = advance();
    std::uint64_t value = 0;
    const char* first = token.text.data();
    const char* last = first + token.text.size();
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc() || result.ptr != last) {
      throw ParseError(token.line, token.column, token.text, {"non-negative integer seed"},
                       "ParseError at " + std::to_string(token.line) + ":" +
                           std::to_string(token.column) + ": seed '" + token.text +
                           "' is not a 64-bit integer");
    }
    return value;
  }

  void parse_statement() {
    if (peek().kind != TokenKind::kIdent) {
      fail({"'state'", "'measure'", "'family'", "'query'", "'verify'", "'grade'",
            "'axioms'"});
    }
    const std::string& head = peek().text;
    if (head == "state") {
      parse_state();
    } else if (head == "measure") {
      parse_measure();
    } else if (head == "family") {
      parse_family();
    } else if (head == "query") {
      parse_query();
    } else if (head == "verify") {
      parse_verify();
    } else if (head == "grade") {
      parse_grade();
    } else if (head == "axioms") {
      advance();
      scenario_.queries.push_back(Query{Query::Kind::kAxioms, "", std::nullopt, ""});
    } else {
      fail({"'state'", "'measure'", "'family'", "'query'", "'verify'", "'grade'",
            "'axioms'"});
    }
  }

  // state <name> { <label>: <re>[+<im>i] @ <eigenvalue>; ... }
  void parse_state() {
    expect_word("state");
    const Token name = expect_ident("state name");
    if (scenario_.find_state(name.text) != nullptr) {
      fail_resolve(name, "state '" + name.text + "' is already declared");
    }
    WaveFunction wf;
    wf.observable_name = name.text;
    expect_punct('{');
    while (true) {
      const Token label = expect_ident("branch label");
      if (wf.find(label.text) != nullptr) {
        fail_resolve(label, "duplicate branch label '" + label.text + "' in state '" +
                                name.text + "'");
      }
      expect_punct(':');
      const Amplitude amplitude = parse_amplitude();
      expect_punct('@');
      const double eigenvalue = expect_signed_number();
      wf.branches.push_back(EigenBranch{label.text, amplitude, eigenvalue});
      if (peek_punct(';')) {
        advance();
        if (peek_punct('}')) {
          break;  // trailing separator
        }
        continue;
      }
      break;
    }
    expect_punct('}');

    const double sum = wf.probability_sum();
    if (!(sum > 0.0)) {
      fail_resolve(name, "state '" + name.text + "' has zero norm and cannot be normalized");
    }
    if (std::abs(sum - 1.0) > tol_.norm) {
      warnings_.push_back("state '" + name.text +
                          "': amplitudes auto-normalized (squared sum was " +
                          format_double(sum) + ")");
    }
    wf = normalize(wf, tol_);
    if (!validate(wf, tol_).empty()) {
      fail_resolve(name, "state '" + name.text + "' is invalid after normalization");
    }
    scenario_.states.push_back(std::move(wf));
  }

  // <re>[('+'|'-')<im>i]
  Amplitude parse_amplitude() {
    Amplitude amplitude;
    amplitude.re = expect_signed_number();
    if (peek_punct('+') || peek_punct('-')) {
      const bool negative = peek().text[0] == '-';
      advance();
      const double magnitude = expect_number_value();
      expect_word("i");
      amplitude.im = negative ? -magnitude : magnitude;
    }
    return amplitude;
  }

  // measure <id> on <name> [at <id>:<label>] (seed <n> | force <label>)
  void parse_measure() {
    expect_word("measure");
    const Token id = expect_ident("measurement id");
    if (scenario_.find_step(id.text) != nullptr) {
      fail_resolve(id, "measurement '" + id.text + "' is already declared");
    }
    expect_word("on");
    const Token state_name = expect_ident("state name");
    const WaveFunction* state = scenario_.find_state(state_name.text);
    if (state == nullptr) {
      fail_resolve(state_name, "unknown state '" + state_name.text + "'");
    }

    MeasureStep step;
    step.id = id.text;
    step.state_name = state_name.text;

    if (peek_word("at")) {
      advance();
      const Token at_id = expect_ident("measurement id");
      expect_punct(':');
      const Token at_label = expect_ident("branch label");
      const MeasureStep* earlier = scenario_.find_step(at_id.text);
      if (earlier == nullptr) {
        fail_resolve(at_id, "attach point references unknown measurement '" + at_id.text +
                                "' (attach points must name an earlier step)");
      }
      const WaveFunction* earlier_state = scenario_.find_state(earlier->state_name);
      const bool is_root_vertex =
          earlier == &scenario_.script.front() && at_label.text == earlier->state_name;
      if (!is_root_vertex && earlier_state->find(at_label.text) == nullptr) {
        fail_resolve(at_label, "attach point '" + at_id.text + ":" + at_label.text +
                                   "' names no branch of state '" + earlier->state_name +
                                   "'");
      }
      step.attach_at = VertexId{at_id.text, at_label.text};
    }

    if (peek_word("seed")) {
      advance();
      step.seed = expect_seed();
    } else if (peek_word("force")) {
      advance();
      const Token label = expect_ident("branch label");
      if (state->find(label.text) == nullptr) {
        fail_resolve(label, "forced label '" + label.text + "' names no branch of state '" +
                                state_name.text + "'");
      }
      step.force_label = label.text;
    } else {
      fail({"'seed'", "'force'"});
    }
    scenario_.script.push_back(std::move(step));
  }

  // family <name> = [<state>, ...]
  void parse_family() {
    expect_word("family");
    const Token name = expect_ident("family name");
    for (const auto& family : scenario_.families) {
      if (family.name == name.text) {
        fail_resolve(name, "family '" + name.text + "' is already declared");
      }
    }
    expect_punct('=');
    expect_punct('[');
    ContextFamily family;
    family.name = name.text;
    while (true) {
      const Token member = expect_ident("state name");
      const WaveFunction* state = scenario_.find_state(member.text);
      if (state == nullptr) {
        fail_resolve(member, "unknown state '" + member.text + "' in family '" +
                                 name.text + "'");
      }
      family.members.push_back(*state);
      if (peek_punct(',')) {
        advance();
        continue;
      }
      break;
    }
    expect_punct(']');
    scenario_.families.push_back(std::move(family));
  }

  // query <name> = <formula>
  void parse_query() {
    expect_word("query");
    const Token name = expect_ident("query name");
    for (const auto& query : scenario_.queries) {
      if (query.kind == Query::Kind::kFormula && query.name == name.text) {
        fail_resolve(name, "query '" + name.text + "' is already declared");
      }
    }
    expect_punct('=');
    ModalFormula formula = parse_formula(0);
    scenario_.queries.push_back(
        Query{Query::Kind::kFormula, name.text, std::move(formula), ""});
  }

  void parse_verify() {
    expect_word("verify");
    const Token name = expect_ident("state name");
    if (scenario_.find_state(name.text) == nullptr) {
      fail_resolve(name, "unknown state '" + name.text + "'");
    }
    scenario_.queries.push_back(Query{Query::Kind::kVerify, "", std::nullopt, name.text});
  }

  void parse_grade() {
    expect_word("grade");
    const Token id = expect_ident("measurement id");
    if (scenario_.find_step(id.text) == nullptr) {
      fail_resolve(id, "unknown measurement '" + id.text + "'");
    }
    scenario_.queries.push_back(Query{Query::Kind::kGrade, "", std::nullopt, id.text});
  }

  // atom(<label>) | not F | pos F | nec F | det(<label>) | abs(<label>) | (F)
  ModalFormula parse_formula(int depth) {
    if (depth >= kMaxFormulaDepth) {
      const Token& token = peek();
      throw Error(ErrorCode::kDepthExceeded,
                  "DepthExceeded at " + std::to_string(token.line) + ":" +
                      std::to_string(token.column) + ": formula nesting exceeds " +
                      std::to_string(kMaxFormulaDepth) + " levels");
    }
    if (peek_punct('(')) {
      advance();
      ModalFormula inner = parse_formula(depth + 1);
      expect_punct(')');
      return inner;
    }
    if (peek().kind != TokenKind::kIdent) {
      fail({"'atom'", "'not'", "'pos'", "'nec'", "'det'", "'abs'", "'('"});
    }
    const std::string& head = peek().text;
    if (head == "not") {
      advance();
      return ModalFormula::negation(parse_formula(depth + 1));
    }
    if (head == "pos") {
      advance();
      return ModalFormula::possibly(parse_formula(depth + 1));
    }
    if (head == "nec") {
      advance();
      return ModalFormula::necessarily(parse_formula(depth + 1));
    }
    if (head == "atom" || head == "det" || head == "abs") {
      const std::string op = advance().text;
      expect_punct('(');
      const Token label = expect_ident("branch label");
      expect_punct(')');
      pending_labels_.push_back(PendingLabel{label.text, label.line, label.column});
      if (op == "atom") {
        return ModalFormula::atom(label.text);
      }
      if (op == "det") {
        return ModalFormula::deterministic(label.text);
      }
      return ModalFormula::absurd(label.text);
    }
    fail({"'atom'", "'not'", "'pos'", "'nec'", "'det'", "'abs'", "'('"});
  }

  // Formula labels resolve against the default family's vocabulary once the
  // whole document is known.
  void resolve_formula_labels() {
    if (pending_labels_.empty()) {
      return;
    }
    const ContextFamily family = scenario_.default_family();
    std::unordered_set<std::string> vocabulary;
    for (const auto& member : family.members) {
      for (const auto& branch : member.branches) {
        vocabulary.insert(branch.label);
      }
    }
    for (const auto& pending : pending_labels_) {
      if (vocabulary.count(pending.label) == 0) {
        throw ResolveError(pending.line, pending.column, pending.label,
                           "ResolveError at " + std::to_string(pending.line) + ":" +
                               std::to_string(pending.column) + ": label '" + pending.label +
                               "' is not in the vocabulary of family '" + family.name + "'");
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  Tolerances tol_;
  Scenario scenario_;
  std::vector<std::string> warnings_;
  std::vector<PendingLabel> pending_labels_;
};

}  // namespace

std::string Query::key() const {
  switch (kind) {
    case Kind::kFormula: return name;
    case Kind::kVerify: return "verify:" + target;
    case Kind::kGrade: return "grade:" + target;
    case Kind::kAxioms: return "axioms";
  }
  return "query";
}

const WaveFunction* Scenario::find_state(std::string_view name) const {
  for (const auto& state : states) {
    if (state.observable_name == name) {
      return &state;
    }
  }
  return nullptr;
}

const MeasureStep* Scenario::find_step(std::string_view id) const {
  for (const auto& step : script) {
    if (step.id == id) {
      return &step;
    }
  }
  return nullptr;
}

ContextFamily Scenario::default_family() const {
  if (!families.empty()) {
    return families.front();
  }
  return ContextFamily{"states", states};
}

ParsedScenario parse_scenario(std::string_view text, const Tolerances& tol) {
  return Parser(text, tol).parse_document();
}

ModalFormula parse_formula(std::string_view text) {
  return Parser(text, Tolerances{}).parse_formula_document();
}

}  // namespace branchlab
