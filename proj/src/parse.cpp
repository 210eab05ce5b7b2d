#include "stateq/parse.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace stateq {

namespace {

const std::array<std::string_view, 8> k_keywords = {
    "PLACE", "MARKING", "TRANSITION", "CONSUME",
    "PRODUCE", "FINAL", "MODE", "REQUIRE"};

bool is_keyword(std::string_view w) {
  for (auto k : k_keywords)
    if (k == w) return true;
  return false;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct Token {
  enum class Kind { word, number, semicolon, comma, colon, end };
  Kind kind;
  std::string text;
  Int value;  // for number
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

 private:
  void advance() {
    skip();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::end;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == ';' || c == ',' || c == ':') {
      tok_.kind = c == ';'   ? Token::Kind::semicolon
                  : c == ',' ? Token::Kind::comma
                             : Token::Kind::colon;
      tok_.text = c;
      bump();
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::number;
      tok_.text = digits;
      tok_.value = Int(digits);
      return;
    }
    if (ident_start(c)) {
      std::string word;
      while (pos_ < text_.size() && ident_char(text_[pos_])) {
        word += text_[pos_];
        bump();
      }
      tok_.kind = Token::Kind::word;
      tok_.text = std::move(word);
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
  }

  void skip() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        bump();
      if (pos_ < text_.size() && text_[pos_] == '{') {
        std::size_t l = line_, c = col_;
        bump();
        while (pos_ < text_.size() && text_[pos_] != '}') bump();
        if (pos_ >= text_.size()) throw ParseError(l, c, "unterminated comment");
        bump();
        continue;
      }
      return;
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  bool at_keyword(std::string_view kw) const {
    return lex_.peek().kind == Token::Kind::word && lex_.peek().text == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) lex_.fail("expected '" + std::string(kw) + "'");
    lex_.take();
  }

  void expect_semicolon() {
    if (lex_.peek().kind != Token::Kind::semicolon) lex_.fail("expected ';'");
    lex_.take();
  }

  bool at_identifier() const {
    return lex_.peek().kind == Token::Kind::word && !is_keyword(lex_.peek().text);
  }

  Token expect_identifier() {
    if (!at_identifier()) lex_.fail("expected an identifier");
    return lex_.take();
  }

  // witem list; an omitted ":n" means 1. Calls sink(name, count, line, col).
  template <class Sink>
  void weighted_list(Sink&& sink) {
    if (!at_identifier()) return;  // empty list allowed
    for (;;) {
      Token id = expect_identifier();
      Int count = 1;
      if (lex_.peek().kind == Token::Kind::colon) {
        lex_.take();
        if (lex_.peek().kind != Token::Kind::number) lex_.fail("expected a count");
        count = lex_.take().value;
      }
      sink(id.text, count, id.line, id.col);
      if (lex_.peek().kind != Token::Kind::comma) return;
      lex_.take();
    }
  }

  bool at_end() const { return lex_.peek().kind == Token::Kind::end; }

  [[noreturn]] void fail(const std::string& msg) const { lex_.fail(msg); }

  const Token& peek() const { return lex_.peek(); }

 private:
  Lexer lex_;
};

}  // namespace

NetFile parse_net(std::string_view text) {
  Parser p(text);
  std::vector<std::string> places;
  p.expect_keyword("PLACE");
  if (!p.at_identifier()) p.fail("expected at least one place");
  p.weighted_list([&](const std::string& name, const Int& count, std::size_t line,
                      std::size_t col) {
    if (count != 1) throw ParseError(line, col, "places are declared without counts");
    places.push_back(name);
  });
  p.expect_semicolon();

  std::vector<std::pair<std::string, Int>> marking_items;
  p.expect_keyword("MARKING");
  p.weighted_list([&](const std::string& name, const Int& count, std::size_t,
                      std::size_t) { marking_items.emplace_back(name, count); });
  p.expect_semicolon();

  std::vector<std::string> transitions;
  struct RawArc {
    bool place_to_transition;
    std::string place;
    std::size_t transition;
    Int weight;
    std::size_t line, col;
  };
  std::vector<RawArc> raw_arcs;
  if (!p.at_keyword("TRANSITION")) p.fail("expected 'TRANSITION'");
  while (p.at_keyword("TRANSITION")) {
    p.expect_keyword("TRANSITION");
    Token name = p.expect_identifier();
    std::size_t t_index = transitions.size();
    transitions.push_back(name.text);
    for (bool consume : {true, false}) {
      const char* kw = consume ? "CONSUME" : "PRODUCE";
      if (!p.at_keyword(kw)) continue;
      p.expect_keyword(kw);
      p.weighted_list([&](const std::string& pl, const Int& count,
                          std::size_t line, std::size_t col) {
        if (count == 0) throw ParseError(line, col, "arc weight must be at least 1");
        raw_arcs.push_back({consume, pl, t_index, count, line, col});
      });
      p.expect_semicolon();
    }
  }
  if (!p.at_end()) p.fail("unexpected trailing input");

  std::vector<Arc> arcs;
  auto make_net = [&]() -> std::shared_ptr<const PetriNet> {
    std::unordered_map<std::string, NodeIndex> place_at;
    for (NodeIndex i = 0; i < places.size(); ++i) {
      if (!place_at.emplace(places[i], i).second)
        throw ParseError(1, 1, "duplicate place name: " + places[i]);
    }
    for (const RawArc& a : raw_arcs) {
      auto it = place_at.find(a.place);
      if (it == place_at.end())
        throw ParseError(a.line, a.col, "unknown place: " + a.place);
      arcs.push_back({a.place_to_transition, it->second,
                      static_cast<NodeIndex>(a.transition), a.weight});
    }
    try {
      return std::make_shared<PetriNet>(places, transitions, arcs);
    } catch (const NetError& e) {
      throw ParseError(1, 1, e.what());
    }
  };

  NetFile out;
  out.net = make_net();
  for (const auto& [name, count] : marking_items) {
    auto s = out.net->find_place(name);
    if (!s) throw ParseError(1, 1, "unknown place in MARKING: " + name);
    out.initial.add(*s, count);
  }
  return out;
}

std::string render_net(const PetriNet& net, const Marking& initial) {
  std::ostringstream os;
  os << "PLACE ";
  for (NodeIndex s = 0; s < net.place_count(); ++s) {
    if (s) os << ", ";
    os << net.place_name(s);
  }
  os << ";\nMARKING";
  bool first = true;
  for (const auto& [s, c] : initial.entries()) {
    os << (first ? " " : ", ") << net.place_name(s);
    if (c != 1) os << ":" << c;
    first = false;
  }
  os << ";\n";
  for (NodeIndex t = 0; t < net.transition_count(); ++t) {
    os << "TRANSITION " << net.transition_name(t);
    auto list = [&](std::span<const std::pair<NodeIndex, Int>> arcs,
                    const char* kw) {
      if (arcs.empty()) return;
      os << " " << kw << " ";
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i) os << ", ";
        os << net.place_name(arcs[i].first);
        if (arcs[i].second != 1) os << ":" << arcs[i].second;
      }
      os << ";";
    };
    list(net.inputs(t), "CONSUME");
    list(net.outputs(t), "PRODUCE");
    os << "\n";
  }
  return os.str();
}

ReachabilityProblem parse_problem(std::string_view text, const NetFile& netfile) {
  Parser p(text);
  ReachabilityProblem problem;
  problem.net = netfile.net;
  problem.initial = netfile.initial;
  bool seen_final = false, seen_mode = false, seen_require = false;
  const PetriNet& net = *netfile.net;
  while (!p.at_end()) {
    if (p.at_keyword("FINAL")) {
      if (seen_final) p.fail("duplicate FINAL section");
      seen_final = true;
      p.expect_keyword("FINAL");
      p.weighted_list([&](const std::string& name, const Int& count,
                          std::size_t line, std::size_t col) {
        auto s = net.find_place(name);
        if (!s) throw ParseError(line, col, "unknown place: " + name);
        problem.final_counts.add(*s, count);
      });
      p.expect_semicolon();
    } else if (p.at_keyword("MODE")) {
      if (seen_mode) p.fail("duplicate MODE section");
      seen_mode = true;
      p.expect_keyword("MODE");
      Token word = p.expect_identifier();
      if (word.text == "reach")
        problem.mode = Mode::reach;
      else if (word.text == "cover")
        problem.mode = Mode::cover;
      else
        throw ParseError(word.line, word.col, "mode must be 'reach' or 'cover'");
      p.expect_semicolon();
    } else if (p.at_keyword("REQUIRE")) {
      if (seen_require) p.fail("duplicate REQUIRE section");
      seen_require = true;
      p.expect_keyword("REQUIRE");
      p.weighted_list([&](const std::string& name, const Int& count,
                          std::size_t line, std::size_t col) {
        auto t = net.find_transition(name);
        if (!t) throw ParseError(line, col, "unknown transition: " + name);
        if (count < 1)
          throw ParseError(line, col, "required count must be at least 1");
        problem.required.emplace_back(*t, count);
      });
      p.expect_semicolon();
    } else {
      p.fail("expected FINAL, MODE or REQUIRE");
    }
  }
  return problem;
}

}  // namespace stateq
