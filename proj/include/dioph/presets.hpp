#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dioph/geometry.hpp"

namespace dioph {

// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }

  // Uniform in [lo, hi]; modulo reduction keeps it identical across platforms.
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(g_() % span);
  }

  Integer bits(int count) {
    Integer v = 0;
    for (int done = 0; done < count; done += 32) {
      int take = std::min(32, count - done);
      v = (v << take) + Integer(g_() >> (64 - take));
    }
    return v;
  }

 private:
  std::mt19937_64 g_;
};

// Dyadic entries k / 2^bits with k uniform; behaves like a real matrix up to
// scales far below 2^bits.
inline System random_dyadic_system(Rng& rng, int n, int m, int bits) {
  RatMatrix t(n, m);
  Integer den = Integer(1) << bits;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t(i, j) = Rational(rng.bits(bits), den);
  return System::from(t);
}

// Entries p / q with 1 <= q <= den_bound and |p| <= q.
inline System random_rational_system(Rng& rng, int n, int m, long den_bound) {
  RatMatrix t(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      long q = rng.uniform(1, den_bound);
      t(i, j) = Rational(rng.uniform(-q, q), q);
    }
  return System::from(t);
}

struct Preset {
  std::string name;
  System system;
};

namespace detail {

constexpr int kPresetBits = 80;

// Real root of the polynomial (coefficients from the constant term up) in
// [lo, hi], to within 2^-bits, by bisection on exact rationals.
inline Rational bisect_root(const std::vector<Rational>& coeffs, Rational lo, Rational hi,
                            int bits = kPresetBits + 8) {
  auto eval = [&](const Rational& x) {
    Rational v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
  };
  bool lo_negative = eval(lo) < 0;
  for (int i = 0; i < bits; ++i) {
    Rational mid = (lo + hi) / 2;
    if ((eval(mid) < 0) == lo_negative) lo = mid;
    else hi = mid;
  }
  return lo;
}

// Nearest k / 2^bits to the fractional part of x.
inline Rational dyadic_fraction(const Rational& x, int bits = kPresetBits) {
  Rational f = x - Rational(floor(x));
  Integer den = Integer(1) << bits;
  Integer k = floor(Rational(f * Rational(den) + Rational(1, 2)));
  return Rational(k, den);
}

inline System row_system(const std::vector<Rational>& row) {
  RatMatrix t(1, row.size());
  for (std::size_t j = 0; j < row.size(); ++j) t(0, j) = row[j];
  return System::from(t);
}

inline bool has_rational_root_cubic(long a, long b) {
  // x^3 + a x + b: a rational root is an integer dividing b.
  if (b == 0) return true;
  for (long q = 1; q <= std::labs(b); ++q) {
    if (b % q) continue;
    for (long r : {q, -q})
      if (r * r * r + a * r + b == 0) return true;
  }
  return false;
}

}  // namespace detail

// Fractional parts of sqrt(k) for non-square k, the golden ratio and a few
// (1 + sqrt k) / 2, as 1x1 systems.
inline std::vector<Preset> quadratic_presets() {
  std::vector<Preset> out;
  auto add = [&](std::string name, const Rational& x) {
    RatMatrix t(1, 1);
    t(0, 0) = detail::dyadic_fraction(x);
    out.push_back({std::move(name), System::from(t)});
  };
  auto root_of = [](long k) {
    long s = 1;
    while ((s + 1) * (s + 1) <= k) ++s;
    return detail::bisect_root({Rational(-k), 0, 1}, s, s + 1);
  };
  for (long k : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 14L, 15L, 17L, 19L, 21L, 23L, 29L})
    add("sqrt" + std::to_string(k), root_of(k));
  add("golden", (root_of(5) + 1) / 2);
  for (long k : {13L, 17L, 21L, 29L}) add("half_one_plus_sqrt" + std::to_string(k), (root_of(k) + 1) / 2);
  return out;
}

// (θ, θ²) for the real root of x³ + a x + b; `count` irreducible cubics
// starting with θ³ = θ + 1.
inline std::vector<Preset> cubic_presets(std::size_t count = 50) {
  std::vector<Preset> out;
  auto add = [&](long a, long b) {
    // The largest real root lies below 1 + |a| + |b|.
    Rational bound = 1 + std::labs(a) + std::labs(b);
    Rational lo = -bound, hi = bound;
    auto eval = [&](const Rational& x) { return x * x * x + a * x + b; };
    // Walk down from the top to isolate the largest root.
    Rational step = Rational(1, 4);
    Rational x = hi;
    while (eval(x) > 0 && x > lo) x -= step;
    Rational theta = detail::bisect_root({Rational(b), Rational(a), 0, 1}, x, x + step);
    std::string name = "cubic_" + std::to_string(a) + "_" + std::to_string(b);
    out.push_back({name, detail::row_system({detail::dyadic_fraction(theta),
                                             detail::dyadic_fraction(theta * theta)})});
  };
  add(-1, -1);
  for (long s = 2; out.size() < count; ++s)
    for (long a = -s; a <= s && out.size() < count; ++a)
      for (long b : {s - std::labs(a), -(s - std::labs(a))}) {
        if (out.size() >= count) break;
        if (b == 0 || (a == -1 && b == -1)) continue;
        if (detail::has_rational_root_cubic(a, b)) continue;
        if (std::labs(a) + std::labs(b) != s) continue;
        add(a, b);
      }
  return out;
}

// Σ_{k<=terms} 10^{-k!}, exact.
inline Preset liouville_preset(int terms = 4) {
  Rational x = 0;
  long f = 1;
  for (int k = 1; k <= terms; ++k) {
    f *= k;
    x += Rational(1) / Rational(pow_int(Integer(10), f));
  }
  RatMatrix t(1, 1);
  t(0, 0) = x;
  return {"liouville", System::from(t)};
}

inline std::vector<Preset> all_presets() {
  std::vector<Preset> out = quadratic_presets();
  for (auto& p : cubic_presets()) {
    out.push_back(p);
    out.push_back({p.name + "_t", p.system.transposed()});
  }
  out.push_back(liouville_preset());
  return out;
}

inline Preset find_preset(const std::string& name) {
  for (auto& p : all_presets())
    if (p.name == name) return p;
  throw Error(ErrorCode::kUsage, "unknown preset: " + name);
}

}  // namespace dioph
