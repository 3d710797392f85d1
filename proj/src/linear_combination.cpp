#include "jacobi/linear_combination.hpp"

#include <cctype>

#include "jacobi/error.hpp"

namespace jacobi {

LinearCombination LinearCombination::single(const std::string& digest, const mpq_class& c) {
  LinearCombination lc;
  lc.add(digest, c);
  return lc;
}

LinearCombination LinearCombination::of(const CanonicalDiagram& cd, const mpq_class& c) {
  LinearCombination lc;
  lc.add(cd, c);
  return lc;
}

void LinearCombination::add(const std::string& digest, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto it = terms_.find(digest);
  if (it == terms_.end()) {
    mpq_class v = c;
    v.canonicalize();
    terms_.emplace(digest, std::move(v));
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

void LinearCombination::add(const CanonicalDiagram& cd, const mpq_class& c) {
  if (cd.sign == 0) return;
  add(cd.digest, cd.sign * c);
}

void LinearCombination::add(const LinearCombination& other, const mpq_class& scale) {
  if (sgn(scale) == 0) return;
  for (const auto& [d, c] : other.terms_) add(d, c * scale);
}

LinearCombination& LinearCombination::operator*=(const mpq_class& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, c] : terms_) c *= s;
  return *this;
}

mpq_class LinearCombination::coefficient(std::string_view digest) const {
  auto it = terms_.find(digest);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void LinearCombination::erase(std::string_view digest) {
  auto it = terms_.find(digest);
  if (it != terms_.end()) terms_.erase(it);
}

std::string format_rational(const mpq_class& q) {
  mpq_class r = q;
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

mpq_class parse_rational(std::string_view text) {
  auto fail = [&]() {
    return Error(ErrorCode::Parse, std::string(text),
                 "bad rational '" + std::string(text) + "'");
  };
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw fail();
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw fail();
  if (text[0] == '-') n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const LinearCombination& lc) {
  std::string out;
  for (const auto& [d, c] : lc.terms()) {
    if (!out.empty()) out += ", ";
    out += d;
    out += ": ";
    out += format_rational(c);
  }
  return out;
}

LinearCombination parse_linear_combination(std::string_view text) {
  LinearCombination lc;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  if (trim(text).empty()) return lc;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    auto colon = item.rfind(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::Parse, std::string(item), "term '" + std::string(item) + "' lacks ':'");
    }
    auto digest = trim(item.substr(0, colon));
    if (digest.empty()) throw Error(ErrorCode::Parse, std::string(item), "empty digest");
    lc.add(std::string(digest), parse_rational(trim(item.substr(colon + 1))));
    start = end + 1;
  }
  return lc;
}

}  // namespace jacobi
