#include "raag/session.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace {

struct Token {
  std::string text;
  int line;
};

// Splits into identifiers/punctuation, tracking line numbers. Letters,
// names and signed letters like a^-1 stay single tokens.
std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  size_t i = 0;
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '^' || c == '-';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (word_char(c) && c != '-' && c != '^') {
      size_t j = i;
      while (j < text.size() && word_char(text[j])) ++j;
      out.push_back({text.substr(i, j - i), line});
      i = j;
    } else if (c == '{' || c == '}' || c == ';' || c == ',' || c == ':' ||
               c == '=') {
      // "=>" and "->" are two-character arrows.
      if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
        out.push_back({"=>", line});
        i += 2;
      } else {
        out.push_back({std::string(1, c), line});
        ++i;
      }
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({"->", line});
      i += 2;
    } else {
      throw ValidationError("session: line " + std::to_string(line) +
                            ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  Session run() {
    parse_alphabet();
    session_.signed_alphabet = session_.base.doubled();
    session_.generators = std::make_shared<GeneratorTable>(session_.base);
    while (!done()) {
      const Token& t = peek();
      if (t.text == "word") {
        parse_word();
      } else if (t.text == "slp") {
        parse_slp();
      } else if (t.text == "gen") {
        parse_gen();
      } else if (t.text == "table") {
        parse_table();
      } else {
        fail("expected 'word', 'slp', 'gen' or 'table'");
      }
    }
    return std::move(session_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = done() ? (tokens_.empty() ? 1 : tokens_.back().line)
                      : tokens_[pos_].line;
    throw ValidationError("session: line " + std::to_string(line) + ": " + msg);
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) fail("unexpected end of input");
    return tokens_[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& text) {
    if (peek().text != text) fail("expected '" + text + "'");
    ++pos_;
  }
  bool accept(const std::string& text) {
    if (!done() && tokens_[pos_].text == text) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string name_token() {
    Token t = next();
    for (char c : t.text) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        fail("'" + t.text + "' is not a valid name");
    }
    return t.text;
  }

  void parse_alphabet() {
    expect("letters");
    expect(":");
    std::vector<std::string> letters;
    while (!done() && peek().text != "independent" && peek().text != "word" &&
           peek().text != "slp" && peek().text != "gen" &&
           peek().text != "table") {
      letters.push_back(next().text);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    if (accept("independent")) {
      expect(":");
      for (;;) {
        std::string a = next().text;
        std::string b = next().text;
        pairs.emplace_back(a, b);
        if (!accept(",")) break;
      }
    }
    session_.base = IndependenceAlphabet::build(letters, pairs);
  }

  Letter parse_letter(const std::string& token) {
    auto x = session_.signed_alphabet.find(token);
    if (!x) fail("unknown letter '" + token + "'");
    return *x;
  }

  bool at_declaration() const {
    if (done()) return true;
    const std::string& t = tokens_[pos_].text;
    return t == "word" || t == "slp" || t == "gen" || t == "table";
  }

  void declare(const std::string& name, Slp slp) {
    if (session_.objects.count(name))
      fail("duplicate object name '" + name + "'");
    session_.objects.emplace(name, std::move(slp));
  }

  void parse_word() {
    expect("word");
    std::string name = name_token();
    expect("=");
    LetterWord w;
    while (!at_declaration()) w.push_back(parse_letter(next().text));
    declare(name, Slp::from_word(session_.signed_alphabet, w));
  }

  void parse_slp() {
    expect("slp");
    std::string name = name_token();
    expect("{");
    if (accept("empty")) {
      accept(";");
      expect("}");
      declare(name, Slp::empty(session_.signed_alphabet));
      return;
    }
    std::map<std::string, Slp::NtId> ids;
    std::vector<Slp::Production> prods;
    std::vector<std::string> names;
    std::optional<std::string> start;
    auto nt_id = [&](const std::string& nt) {
      auto it = ids.find(nt);
      if (it != ids.end()) return it->second;
      Slp::NtId id = static_cast<Slp::NtId>(prods.size());
      ids.emplace(nt, id);
      prods.push_back({});
      prods.back().left = -2;  // declared, production still pending
      names.push_back(nt);
      return id;
    };
    while (!accept("}")) {
      if (accept("start")) {
        start = name_token();
        accept(";");
        continue;
      }
      std::string lhs = next().text;
      Slp::NtId id = nt_id(lhs);
      if (prods[id].left != -2)
        fail("nonterminal '" + lhs + "' has two productions");
      expect("->");
      std::string first = next().text;
      if (!done() && peek().text != ";" && peek().text != "}" &&
          peek().text != "start") {
        std::string second = next().text;
        prods[id].left = nt_id(first);
        prods[id].right = nt_id(second);
      } else {
        auto x = session_.signed_alphabet.find(first);
        if (!x) fail("unknown letter '" + first + "' (terminal rules need a letter)");
        prods[id] = {-1, -1, *x};
      }
      accept(";");
    }
    if (!start) fail("program '" + name + "' has no start symbol");
    auto it = ids.find(*start);
    if (it == ids.end()) fail("start symbol '" + *start + "' is undefined");
    for (const auto& [nt, id] : ids) {
      if (prods[id].left == -2)
        fail("nonterminal '" + nt + "' is used but never defined");
    }
    Slp built = [&]() -> Slp {
      try {
        return Slp::from_productions(session_.signed_alphabet, prods,
                                     it->second, names);
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }();
    declare(name, std::move(built));
  }

  void parse_gen() {
    expect("gen");
    std::string name = name_token();
    expect("{");
    std::map<std::string, LetterWord> images;
    while (!accept("}")) {
      std::string letter = next().text;
      if (!session_.base.find(letter))
        fail("unknown base letter '" + letter + "' in generator '" + name + "'");
      expect("=>");
      LetterWord image;
      while (!done() && peek().text != ";" && peek().text != "}")
        image.push_back(parse_letter(next().text));
      if (images.count(letter))
        fail("duplicate image for letter '" + letter + "'");
      images.emplace(letter, std::move(image));
      accept(";");
    }
    try {
      session_.generators->define(name, images);
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }

  void parse_table() {
    expect("table");
    std::string name = name_token();
    expect("=");
    std::vector<std::string> members;
    while (!at_declaration()) members.push_back(name_token());
    for (const auto& g : members) {
      if (!session_.generators->has(g))
        fail("table '" + name + "' lists unknown generator '" + g + "'");
    }
    if (session_.tables.count(name)) fail("duplicate table '" + name + "'");
    session_.tables.emplace(name, std::move(members));
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  Session session_;
};

}  // namespace

const Slp& Session::object(const std::string& name) const {
  auto it = objects.find(name);
  if (it == objects.end())
    throw ValidationError("session: no word or program named '" + name + "'");
  return it->second;
}

Session parse_session_text(const std::string& text) {
  return Parser(text).run();
}

Session parse_session_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("session: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_session_text(buffer.str());
}

std::string format_word(const IndependenceAlphabet& alpha,
                        std::span<const Letter> w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << alpha.name(w[i]);
  }
  return os.str();
}

std::string format_slp(const Slp& s, const std::string& name) {
  std::ostringstream os;
  os << "slp " << name << " { ";
  if (s.is_empty_program()) {
    os << "empty }";
    return os.str();
  }
  for (int i = 0; i < s.size(); ++i) {
    const Slp::Production& p = s.production(i);
    os << 'X' << i + 1 << " -> ";
    if (p.is_terminal()) {
      os << s.alphabet().name(p.terminal);
    } else {
      os << 'X' << p.left + 1 << " X" << p.right + 1;
    }
    os << " ; ";
  }
  os << "start X" << s.start() + 1 << " }";
  return os.str();
}

}  // namespace raag
