#include "anosov/hyperbolic.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw InputError("malformed matrix: empty entry");
  std::size_t start = (token.front() == '-' || token.front() == '+') ? 1 : 0;
  if (start == token.size()) throw InputError("malformed matrix: sign without digits");
  for (std::size_t i = start; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
      throw InputError("malformed matrix: '" + std::string(token) + "' is not an integer");
    }
  }
  std::string digits(token.substr(token.front() == '+' ? 1 : 0));
  return BigInt(digits, 10);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

}  // namespace

IntMat parse_matrix_2x2(std::string_view text) {
  const auto rows = split(trim(text), ';');
  if (rows.size() != 2) throw InputError("malformed matrix: expected two rows separated by ';'");
  std::vector<BigInt> entries;
  for (const auto row : rows) {
    const auto cells = split(row, ',');
    if (cells.size() != 2) throw InputError("malformed matrix: expected two entries per row");
    for (const auto cell : cells) entries.push_back(parse_integer(cell));
  }
  return IntMat(2, 2, std::move(entries));
}

Hyperbolic2::Hyperbolic2(IntMat m, BigInt det, BigInt trace)
    : m_(std::move(m)), det_(std::move(det)), trace_(std::move(trace)) {}

Hyperbolic2 Hyperbolic2::from_matrix(IntMat m) {
  if (m.rows() != 2 || m.cols() != 2) throw InputError("not hyperbolic: matrix is not 2x2");
  BigInt det = determinant(m);
  if (det != 1 && det != -1) {
    throw InputError("not hyperbolic: det = " + det.get_str() + " (expected +1 or -1)");
  }
  BigInt tr = anosov::trace(m);
  if (abs(tr) <= 2) throw InputError("not hyperbolic: |trace| = " + BigInt(abs(tr)).get_str());
  return Hyperbolic2(std::move(m), std::move(det), std::move(tr));
}

Hyperbolic2 Hyperbolic2::parse(std::string_view text) { return from_matrix(parse_matrix_2x2(text)); }

void Hyperbolic2::require_positive(std::string_view context) const {
  if (det_ != 1) {
    throw InputError(std::string(context) + ": outside the positive hyperbolic SL(2,Z) class: det = " +
                     det_.get_str() + " (need det = 1 and trace >= 3)");
  }
  if (trace_ < 3) {
    throw InputError(std::string(context) + ": outside the positive hyperbolic SL(2,Z) class: trace = " +
                     trace_.get_str() + " (need det = 1 and trace >= 3)");
  }
}

Hyperbolic2 Hyperbolic2::inverse() const {
  IntMat inv = inverse_unimodular_2x2(m_);
  BigInt tr = anosov::trace(inv);
  return Hyperbolic2(std::move(inv), det_, std::move(tr));
}

std::string Hyperbolic2::to_string() const {
  return m_(0, 0).get_str() + "," + m_(0, 1).get_str() + ";" + m_(1, 0).get_str() + "," +
         m_(1, 1).get_str();
}

}  // namespace anosov
