#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affcurv {

// Exact rational coefficients. All engine arithmetic is exact; there is no
// floating point anywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

enum class Errc {
  ContextMismatch,
  FieldMismatch,
  Parse,
  Domain,
  NotZeroDimensional,
  NonIsolatedSingularity,
  GenericityFailure,
  DeformationFailure,
  UnsupportedInfinity,
  MissingBeta,
  InternalCheck,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline Rat rat(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }

// ---------------------------------------------------------------------------
// Prime field F_p, p an odd prime < 2^62. Elements carry their modulus; mixing
// moduli is a hard error, not UB.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::uint64_t value, std::uint64_t mod) : v(value % mod), p(mod) {}

  friend Fp operator+(const Fp& a, const Fp& b) {
    a.check(b);
    std::uint64_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return raw(s, a.p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    a.check(b);
    return raw(a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    a.check(b);
    return raw(static_cast<std::uint64_t>(
                   (static_cast<unsigned __int128>(a.v) * b.v) % a.p),
               a.p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return raw(v == 0 ? 0 : p - v, p); }
  friend bool operator==(const Fp& a, const Fp& b) {
    a.check(b);
    return a.v == b.v;
  }

  Fp inverse() const {
    if (v == 0) fail(Errc::Domain, "division by zero in F_p");
    // extended Euclid
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(v);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return raw(static_cast<std::uint64_t>(t), p);
  }

  static Fp raw(std::uint64_t value, std::uint64_t mod) {
    Fp x; x.v = value; x.p = mod; return x;
  }

 private:
  void check(const Fp& o) const {
    if (p != o.p) fail(Errc::FieldMismatch, "mixed prime-field moduli");
  }
};

inline bool is_zero(const Fp& a) { return a.v == 0; }

// Field helpers used by the templated kernels.
template <class K> struct field_ops;

template <> struct field_ops<Rat> {
  static Rat one_like(const Rat&) { return Rat(1); }
  static bool zero(const Rat& a) { return sgn(a) == 0; }
};

template <> struct field_ops<Fp> {
  static Fp one_like(const Fp& a) { return Fp::raw(1 % a.p, a.p); }
  static bool zero(const Fp& a) { return a.v == 0; }
};

// ---------------------------------------------------------------------------
// Deterministic PRNG (splitmix64). Reproducibility across platforms matters
// more than statistical strength here; every randomized choice in the engine
// is derived from a user-visible seed through this generator.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [1, bound], bound >= 1
  std::uint64_t next_in(std::uint64_t bound) { return next() % bound + 1; }

  // nonzero signed integer with |value| <= bound
  long next_coeff(std::uint64_t bound) {
    long m = static_cast<long>(next_in(bound));
    return (next() & 1) ? m : -m;
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
    Rng r(seed ^ (0x517cc1b727220a95ULL * (tag + 1)));
    return r.next();
  }
};

// Miller-Rabin, deterministic for 64-bit inputs with the standard base set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

// Random prime in [2^20, 2^31); the verification lane requires this headroom.
inline std::uint64_t random_prime(Rng& rng) {
  for (;;) {
    std::uint64_t c = (rng.next() % ((1ULL << 31) - (1ULL << 20))) + (1ULL << 20);
    c |= 1;
    if (is_prime_u64(c)) return c;
  }
}

}  // namespace affcurv
