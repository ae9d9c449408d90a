#include "blockcalc/rational.hpp"

namespace blockcalc {

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int n(s.substr(0, slash));
  Int d(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + s + "'");
  return Rat(n, d);
}

std::string format_rat(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

std::map<Int, int> factor(Int n) {
  if (n == 0) throw std::invalid_argument("factor: zero");
  if (n < 0) n = -n;
  std::map<Int, int> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

int valuation(const Rat& r, const Int& p) {
  if (r == 0) throw std::invalid_argument("valuation: zero");
  int v = 0;
  Int n = num(r);
  while (n % p == 0) {
    ++v;
    n /= p;
  }
  Int d = den(r);
  while (d % p == 0) {
    --v;
    d /= p;
  }
  return v;
}

Rat prime_to_part(const Rat& r, const Int& p) {
  int v = valuation(r, p);
  Rat q = r;
  Rat pr(p);
  for (; v > 0; --v) q /= pr;
  for (; v < 0; ++v) q *= pr;
  return q;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) return n == p;
  return true;
}

Int pow_mod(Int base, Int exp, const Int& mod) {
  Int r = 1;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp % 2 == 1) r = (r * base) % mod;
    base = (base * base) % mod;
    exp /= 2;
  }
  return r;
}

}  // namespace blockcalc
