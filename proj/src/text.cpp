#include "qiso/text.hpp"

#include <algorithm>
#include <cstdio>

namespace qiso::text {

namespace {

std::vector<std::pair<std::string, int>> tokenize(std::string_view s) {
  std::vector<std::pair<std::string, int>> tokens;  // token, 1-based column
  std::string cur;
  int start = 0;
  for (int i = 0; i <= int(s.size()); ++i) {
    const char c = i < int(s.size()) ? s[i] : ' ';
    if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r') {
      if (!cur.empty()) tokens.emplace_back(cur, start + 1);
      cur.clear();
    } else {
      if (cur.empty()) start = i;
      cur.push_back(c);
    }
  }
  return tokens;
}

int parse_letter(const std::string& tok, int column) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("expected a letter at column " + std::to_string(column) +
                                ", got '" + tok + "'");
  int v = std::stoi(tok);
  if (v < 1)
    throw std::invalid_argument("letters start at 1 (column " + std::to_string(column) + ")");
  return v;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::string fmt_coeff(cplx c) {
  if (c.imag() == 0.0) return fmt_double(c.real());
  std::string s = "(" + fmt_double(c.real());
  s += c.imag() < 0 ? "-" : "+";
  s += fmt_double(std::abs(c.imag()));
  s += "i)";
  return s;
}

std::string fmt_subscript(const Word& w) {
  const bool compact = std::all_of(w.begin(), w.end(), [](int x) { return x <= 9; });
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) s += ",";
    s += std::to_string(w[i]);
  }
  return s;
}

}  // namespace

Word parse_word(std::string_view s) {
  auto tokens = tokenize(s);
  if (tokens.size() == 1 && tokens[0].first == "e") return {};
  Word w;
  for (const auto& [tok, col] : tokens) w.push_back(parse_letter(tok, col));
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s;
}

Tail parse_tail(std::string_view s) {
  auto sep = s.find(';');
  if (sep == std::string_view::npos)
    throw std::invalid_argument("tail syntax is \"u;v\" (preperiod;period), got '" +
                                std::string(s) + "'");
  Word u = s.substr(0, sep).find_first_not_of(" \t") == std::string_view::npos
               ? Word{}
               : parse_word(s.substr(0, sep));
  Word v = parse_word(s.substr(sep + 1));
  if (v.empty()) throw std::invalid_argument("tail period must be nonempty");
  return Tail(std::move(u), std::move(v));
}

std::string format_tail(const Tail& t) {
  std::string s = t.preperiod().empty() ? "" : format_word(t.preperiod());
  return s + ";" + format_word(t.period());
}

std::vector<rewrite::Symbol> parse_star_word(std::string_view s, int d) {
  std::vector<rewrite::Symbol> out;
  for (auto& [tok, col] : tokenize(s)) {
    rewrite::Symbol sym;
    std::string body = tok;
    if (!body.empty() && body.back() == '*') {
      sym.starred = true;
      body.pop_back();
    }
    sym.letter = parse_letter(body, col);
    if (sym.letter > d)
      throw std::invalid_argument("letter " + std::to_string(sym.letter) +
                                  " exceeds the generator count d=" + std::to_string(d) +
                                  " (column " + std::to_string(col) + ")");
    out.push_back(sym);
  }
  return out;
}

std::string format_monomial(const rewrite::Monomial& m) {
  std::string s = fmt_coeff(m.coeff) + " * ";
  if (m.creators.empty() && m.annihilators.empty()) return s + "I";
  std::string parts;
  if (!m.creators.empty()) parts += "s_" + fmt_subscript(m.creators);
  if (!m.annihilators.empty()) {
    if (!parts.empty()) parts += " ";
    parts += "s_" + fmt_subscript(m.annihilators) + "*";
  }
  return s + parts;
}

}  // namespace qiso::text
