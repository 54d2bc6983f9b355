#include "markoff/matseq/int_poly.hpp"

#include <algorithm>
#include <sstream>

#include "markoff/error.hpp"

namespace markoff::matseq {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(int degree, BigInt coeff) {
  std::vector<BigInt> c(static_cast<std::size_t>(degree) + 1);
  c.back() = std::move(coeff);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::parse_coefficients(const std::string& text) {
  std::vector<BigInt> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (!item.empty() && item.front() == '+') item.erase(0, 1);
    BigInt v;
    if (item.empty() || v.set_str(item, 10) != 0) {
      throw FormatError("bad polynomial coefficient '" + item + "' in '" + text + "'");
    }
    c.push_back(std::move(v));
  }
  if (c.empty()) throw FormatError("empty polynomial coefficient list");
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

const BigInt& IntPoly::leading() const {
  if (c_.empty()) throw InvariantViolation("leading coefficient of the zero polynomial");
  return c_.back();
}

BigInt IntPoly::norm() const {
  BigInt n = 0;
  for (const auto& v : c_) {
    if (abs(v) > n) n = abs(v);
  }
  return n;
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& v : c_) g = big_gcd(g, v);
  return g;
}

IntPoly IntPoly::derivative() const {
  std::vector<BigInt> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(d));
}

BigInt IntPoly::eval(const BigInt& t) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < c_.size()) r[i] += c_[i];
    if (i < o.c_.size()) r[i] += o.c_[i];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const { return scaled(-1); }

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::scaled(const BigInt& s) const {
  std::vector<BigInt> r(c_);
  for (auto& v : r) v *= s;
  return IntPoly(std::move(r));
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    const bool neg = v < 0;
    const BigInt mag = abs(v);
    if (neg) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (mag != 1 || i == 0) out += to_dec(mag);
    if (i >= 1) out += "T";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

std::string IntPoly::to_coefficient_list() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += to_dec(c_[i]);
  }
  return out;
}

}  // namespace markoff::matseq
