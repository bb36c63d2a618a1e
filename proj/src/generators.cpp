#include "eisenfact/generators.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace eisenfact {

int kronecker(long D, long n) {
  if (n <= 0)
    throw Error(ErrorCode::UnsupportedDiscriminant,
                "kronecker: n must be positive");
  switch (D) {
    case -3: {
      long r = n % 3;
      return r == 0 ? 0 : (r == 1 ? 1 : -1);
    }
    case -4: {
      if (n % 2 == 0) return 0;
      return n % 4 == 1 ? 1 : -1;
    }
    case -8: {
      if (n % 2 == 0) return 0;
      long r = n % 8;
      return (r == 1 || r == 3) ? 1 : -1;
    }
    default:
      throw Error(ErrorCode::UnsupportedDiscriminant,
                  "kronecker: discriminant " + std::to_string(D) +
                      " not supported (need -3, -4 or -8)");
  }
}

bool GeneratorId::is_family() const {
  switch (name) {
    case GenName::FamF:
    case GenName::FamG:
    case GenName::FamFp3:
    case GenName::FamGp3:
    case GenName::Famf:
    case GenName::Famg:
      return true;
    default:
      return false;
  }
}

int GeneratorId::period() const {
  switch (name) {
    case GenName::FamF:
    case GenName::FamFp3:
    case GenName::FamGp3:
    case GenName::Famf:
      return 2;
    case GenName::FamG:
      return level == 1 ? 3 : (level == 2 ? 4 : (level == 3 ? 3 : 2));
    case GenName::Famg:
      return level == 1 ? 3 : (level == 2 ? 4 : 2);
    default:
      throw Error(ErrorCode::NotAFamily, str() + " has no index period");
  }
}

Rational GeneratorId::weight() const {
  switch (name) {
    case GenName::E2: return Rational(2);
    case GenName::E4: return Rational(4);
    case GenName::E6: return Rational(6);
    case GenName::Eta: return make_rational(1, 2);
    case GenName::Theta: return make_rational(1, 2);
    case GenName::E1m3:
    case GenName::E1m4:
    case GenName::E1m8: return Rational(1);
    case GenName::E3m31:
    case GenName::E31m3: return Rational(3);
    case GenName::EN2: return Rational(2);
    case GenName::EN4: return Rational(4);
    case GenName::E42p: return Rational(2);
    case GenName::Eta2:
    case GenName::Eta3: return Rational(1);
    case GenName::Eta4: return make_rational(1, 2);
    case GenName::Q3: return Rational(3);
    case GenName::FamF:
      return Rational(level == 1 ? 6 : (level == 2 ? 4 : (level == 3 ? 3 : 2)));
    case GenName::FamG:
      return Rational(level == 1 ? 4 : 2);
    case GenName::FamFp3:
    case GenName::FamGp3: return Rational(4);
    case GenName::Famf:
      if (level == 1) return Rational(2);
      if (level == 4) return make_rational(1, 2);
      return Rational(1);
    case GenName::Famg:
      return level == 1 ? Rational(2) : Rational(1);
  }
  return Rational(0);
}

GeneratorId GeneratorId::canonical() const {
  GeneratorId id = *this;
  if (id.is_family()) {
    int p = id.period();
    id.index = ((id.index % p) + p) % p;
  }
  return id;
}

GeneratorId GeneratorId::make(GenName n, int level, int index) {
  GeneratorId id;
  id.name = n;
  id.level = level;
  id.index = index;
  return id.canonical();
}

std::string GeneratorId::str() const {
  switch (name) {
    case GenName::E2: return "E2";
    case GenName::E4: return "E4";
    case GenName::E6: return "E6";
    case GenName::Eta: return "eta";
    case GenName::Theta: return "theta";
    case GenName::E1m3: return "E1m3";
    case GenName::E1m4: return "E1m4";
    case GenName::E1m8: return "E1m8";
    case GenName::E3m31: return "E3m31";
    case GenName::E31m3: return "E31m3";
    case GenName::EN2: return "E" + std::to_string(level) + "2";
    case GenName::EN4: return "E" + std::to_string(level) + "4";
    case GenName::E42p: return "E42p";
    case GenName::Eta2: return "eta2";
    case GenName::Eta3: return "eta3";
    case GenName::Eta4: return "eta4";
    case GenName::Q3: return "Q3";
    case GenName::FamF:
      return "F(" + std::to_string(level) + "," + std::to_string(index) + ")";
    case GenName::FamG:
      return "G(" + std::to_string(level) + "," + std::to_string(index) + ")";
    case GenName::FamFp3: return "Fp3(" + std::to_string(index) + ")";
    case GenName::FamGp3: return "Gp3(" + std::to_string(index) + ")";
    case GenName::Famf:
      return "f(" + std::to_string(level) + "," + std::to_string(index) + ")";
    case GenName::Famg:
      return "g(" + std::to_string(level) + "," + std::to_string(index) + ")";
  }
  return "?";
}

namespace {

[[noreturn]] void unknown_generator(const std::string& s) {
  throw Error(ErrorCode::UnknownGenerator, s);
}

void validate(const GeneratorId& id) {
  switch (id.name) {
    case GenName::EN2:
      if (id.level < 2 || id.level > 4) unknown_generator(id.str());
      break;
    case GenName::EN4:
      if (id.level != 2 && id.level != 3) unknown_generator(id.str());
      break;
    case GenName::FamF:
    case GenName::FamG:
    case GenName::Famf:
      if (id.level < 1 || id.level > 4) unknown_generator(id.str());
      break;
    case GenName::Famg:
      if (id.level != 1 && id.level != 2 && id.level != 4)
        unknown_generator(id.str());
      break;
    default:
      break;
  }
}

}  // namespace

GeneratorId GeneratorId::parse(const std::string& s) {
  auto family = [&](GenName n, bool has_level) -> GeneratorId {
    std::size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')') unknown_generator(s);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    int level = 3, index = 0;
    std::size_t comma = args.find(',');
    try {
      if (has_level) {
        if (comma == std::string::npos) unknown_generator(s);
        level = std::stoi(args.substr(0, comma));
        index = std::stoi(args.substr(comma + 1));
      } else {
        if (comma != std::string::npos) unknown_generator(s);
        index = std::stoi(args);
      }
    } catch (const std::logic_error&) {
      unknown_generator(s);
    }
    GeneratorId id = make(n, level, index);
    validate(id);
    return id;
  };

  if (s == "E2") return make(GenName::E2);
  if (s == "E4") return make(GenName::E4);
  if (s == "E6") return make(GenName::E6);
  if (s == "eta") return make(GenName::Eta);
  if (s == "theta") return make(GenName::Theta);
  if (s == "E1m3") return make(GenName::E1m3);
  if (s == "E1m4") return make(GenName::E1m4);
  if (s == "E1m8") return make(GenName::E1m8);
  if (s == "E3m31") return make(GenName::E3m31);
  if (s == "E31m3") return make(GenName::E31m3);
  if (s == "E22") return make(GenName::EN2, 2);
  if (s == "E32") return make(GenName::EN2, 3);
  if (s == "E42") return make(GenName::EN2, 4);
  if (s == "E24") return make(GenName::EN4, 2);
  if (s == "E34") return make(GenName::EN4, 3);
  if (s == "E42p") return make(GenName::E42p);
  if (s == "eta2") return make(GenName::Eta2);
  if (s == "eta3") return make(GenName::Eta3);
  if (s == "eta4") return make(GenName::Eta4);
  if (s == "Q3") return make(GenName::Q3);
  if (s.rfind("Fp3", 0) == 0) return family(GenName::FamFp3, false);
  if (s.rfind("Gp3", 0) == 0) return family(GenName::FamGp3, false);
  if (s.rfind("F(", 0) == 0) return family(GenName::FamF, true);
  if (s.rfind("G(", 0) == 0) return family(GenName::FamG, true);
  if (s.rfind("f(", 0) == 0) return family(GenName::Famf, true);
  if (s.rfind("g(", 0) == 0) return family(GenName::Famg, true);
  unknown_generator(s);
}

GeneratorId translate_index(const GeneratorId& id) {
  if (!id.is_family())
    throw Error(ErrorCode::NotAFamily,
                id.str() + " has no translation index");
  return GeneratorId::make(id.name, id.level, id.index + 1);
}

namespace {

using S = Series<ExactRing>;

// --- primitive expansions -------------------------------------------------

S eisenstein(const ExactRing& ring, long T, int k, long factor) {
  S r;
  r.denom = 1;
  r.low = 0;
  r.known = T;
  r.coeffs.assign(static_cast<std::size_t>(T), ring.zero());
  std::vector<mpz_class> sig(static_cast<std::size_t>(T), mpz_class(0));
  for (long d = 1; d < T; ++d) {
    mpz_class dk(d);
    mpz_pow_ui(dk.get_mpz_t(), dk.get_mpz_t(), static_cast<unsigned long>(k));
    for (long n = d; n < T; n += d) sig[static_cast<std::size_t>(n)] += dk;
  }
  r.coeffs[0] = ring.one();
  for (long n = 1; n < T; ++n)
    r.coeffs[static_cast<std::size_t>(n)] =
        RingElem(Rational(factor * sig[static_cast<std::size_t>(n)]));
  return r;
}

// const_term + sum_n (sum_{d|n} chi(d) * d^pow) q^n
S character_eisenstein(const ExactRing& ring, long T, long D, int pow,
                       const Rational& const_term, bool twist_codivisor) {
  S r;
  r.denom = 1;
  r.low = 0;
  r.known = T;
  r.coeffs.assign(static_cast<std::size_t>(T), ring.zero());
  std::vector<long long> acc(static_cast<std::size_t>(T), 0);
  for (long d = 1; d < T; ++d) {
    if (!twist_codivisor) {
      int chi = kronecker(D, d);
      if (chi == 0) continue;
      long long w = chi;
      for (int i = 0; i < pow; ++i) w *= d;
      for (long n = d; n < T; n += d) acc[static_cast<std::size_t>(n)] += w;
    } else {
      // chi on the codivisor: sum_{d|n} (n/d)^0... here sum_{e|n} chi(e)*(n/e)^pow
      int chi = kronecker(D, d);
      if (chi == 0) continue;
      for (long n = d; n < T; n += d) {
        long long m = n / d;
        long long w = chi;
        for (int i = 0; i < pow; ++i) w *= m;
        acc[static_cast<std::size_t>(n)] += w;
      }
    }
  }
  if (const_term != 0) r.coeffs[0] = RingElem(const_term);
  for (long n = 1; n < T; ++n)
    if (acc[static_cast<std::size_t>(n)] != 0)
      r.coeffs[static_cast<std::size_t>(n)] =
          RingElem(Rational(static_cast<long>(acc[static_cast<std::size_t>(n)])));
  return r;
}

S dedekind_eta(const ExactRing& ring, long T) {
  // q^(1/24) * sum_m (-1)^m q^(m(3m-1)/2) = sum_m (-1)^m q^((6m-1)^2/24)
  S r;
  r.denom = 24;
  r.low = 1;
  r.known = 24 * T;
  r.coeffs.assign(static_cast<std::size_t>(24 * T - 1), ring.zero());
  for (long m = 0;; m >= 0 ? m = -(m + 1) : m = -m) {
    long a = 6 * m - 1;
    long idx = a * a;
    if (idx >= 24 * T) {
      if (m < 0) continue;  // the other sign may still be in range
      break;
    }
    r.coeffs[static_cast<std::size_t>(idx - 1)] =
        ring.from_long((m % 2 == 0) ? 1 : -1);
  }
  return r;
}

S jacobi_theta(const ExactRing& ring, long T) {
  S r;
  r.denom = 1;
  r.low = 0;
  r.known = T;
  r.coeffs.assign(static_cast<std::size_t>(T), ring.zero());
  r.coeffs[0] = ring.one();
  for (long n = 1; n * n < T; ++n)
    r.coeffs[static_cast<std::size_t>(n * n)] = ring.from_long(2);
  return r;
}

}  // namespace

Series<ExactRing> Registry::generate(const GeneratorId& id,
                                     const Rational& order) {
  long T = std::max(ceil_long(order), 1L);
  return generate(id, T);
}

Series<ExactRing> Registry::generate(const GeneratorId& id_in,
                                     long order_qunits) {
  GeneratorId id = id_in.canonical();
  validate(id);
  long T = std::max(order_qunits, 1L);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(id);
    if (it != memo_.end() && it->second.known_qunits() >= T)
      return it->second;
  }
  long T16 = ((T + 15) / 16) * 16;
  S s = cached_or_build(id, T16);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(id);
  if (it == memo_.end() || it->second.known_qunits() < s.known_qunits())
    memo_[id] = s;
  return s;
}

Series<ExactRing> Registry::cached_or_build(const GeneratorId& id,
                                            long depth) {
  std::string path;
  if (!cache_dir_.empty()) {
    std::string name = id.str();
    for (char& c : name)
      if (c == '(' || c == ')' || c == ',') c = '_';
    path = cache_dir_ + "/" + name + "_T" + std::to_string(depth) + ".qs";
    S s;
    if (read_series_file(path, &s) && s.known_qunits() >= depth) return s;
  }
  S s = build(id, depth);
  if (!path.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);
    write_series_file(path, id, s);
  }
  return s;
}

Series<ExactRing> Registry::build(const GeneratorId& id, long T) {
  const ExactRing& R = ring_;
  auto gen = [&](GeneratorId sub, long t) { return generate(sub, t); };
  auto named = [&](GenName n, int level = 0, int index = 0) {
    return GeneratorId::make(n, level, index);
  };
  auto scal = [&](const RingElem& c, const S& a) {
    return series_scalar_mul(R, c, a);
  };
  auto rat = [&](long num, long den = 1) {
    return RingElem(make_rational(num, den));
  };
  int j = id.index;
  RingElem sign_j = rat(j % 2 == 0 ? 1 : -1);  // (-1)^j

  S r;
  switch (id.name) {
    case GenName::E2: r = eisenstein(R, T, 1, -24); break;
    case GenName::E4: r = eisenstein(R, T, 3, 240); break;
    case GenName::E6: r = eisenstein(R, T, 5, -504); break;
    case GenName::Eta: r = dedekind_eta(R, T); break;
    case GenName::Theta: r = jacobi_theta(R, T); break;
    case GenName::E1m3:
      r = character_eisenstein(R, T, -3, 0, make_rational(1, 6), false);
      break;
    case GenName::E1m4:
      r = character_eisenstein(R, T, -4, 0, make_rational(1, 4), false);
      break;
    case GenName::E1m8:
      r = character_eisenstein(R, T, -8, 0, make_rational(1, 2), false);
      break;
    case GenName::E3m31:
      r = character_eisenstein(R, T, -3, 2, make_rational(-1, 9), false);
      break;
    case GenName::E31m3:
      r = character_eisenstein(R, T, -3, 2, Rational(0), true);
      break;
    case GenName::EN2: {
      long N = id.level;
      S e2 = gen(named(GenName::E2), T);
      S d = series_dilate(R, e2, N);
      r = scal(rat(1, N - 1), series_sub(R, scal(rat(N), d), e2));
      break;
    }
    case GenName::EN4: {
      long N = id.level;
      S e4 = gen(named(GenName::E4), T);
      S d = series_dilate(R, e4, N);
      r = scal(rat(1, N * N - 1), series_sub(R, scal(rat(N * N), d), e4));
      break;
    }
    case GenName::E42p: {
      S e2 = gen(named(GenName::E2), T);
      S a = scal(rat(4), series_dilate(R, e2, 4));
      S b = scal(rat(4), series_dilate(R, e2, 2));
      r = series_add(R, series_sub(R, a, b), e2);
      break;
    }
    case GenName::Eta2: {
      S eta = gen(named(GenName::Eta), T + 1);
      r = series_mul(R, eta, series_dilate(R, eta, 2));
      break;
    }
    case GenName::Eta3: {
      S eta = gen(named(GenName::Eta), T + 1);
      r = series_mul(R, eta, series_dilate(R, eta, 3));
      break;
    }
    case GenName::Eta4: {
      S eta = gen(named(GenName::Eta), T + 2);
      S num = series_mul(R, eta, series_dilate(R, eta, 4));
      r = series_div(R, num, series_dilate(R, eta, 2));
      break;
    }
    case GenName::Q3: {
      S a = gen(named(GenName::E3m31), T);
      S b = gen(named(GenName::E31m3), T);
      r = scal(rat(-9), series_add(R, a, scal(rat(3), b)));
      break;
    }
    case GenName::FamF: {
      // In levels 1-3 the square roots in the F definitions denote the
      // branch opposite to the one fixed by rho and the f-family zeros;
      // resolving them that way is what makes f^3 = F / f^4 = F hold with
      // matching indices. Level 4 is principal-branch consistent.
      switch (id.level) {
        case 1: {
          S e6 = gen(named(GenName::E6), T);
          S eta12 = series_pow(R, gen(named(GenName::Eta), T + 1), 12);
          r = series_add(R, e6, scal(sign_j * const_sqrt(-1728), eta12));
          break;
        }
        case 2: {
          S e24 = gen(named(GenName::EN4, 2), T);
          S h = series_pow(R, gen(named(GenName::Eta2), T + 1), 4);
          r = series_add(R, e24, scal(sign_j * const_sqrt(-256), h));
          break;
        }
        case 3: {
          S q3 = gen(named(GenName::Q3), T);
          S h = series_pow(R, gen(named(GenName::Eta3), T + 1), 3);
          r = series_add(R, q3, scal(sign_j * rat(6) * const_sqrt(-3), h));
          break;
        }
        case 4: {
          S e = gen(named(GenName::E42p), T);
          S h = series_pow(R, gen(named(GenName::Eta4), T + 1), 4);
          r = series_sub(R, e, scal(sign_j * const_sqrt(-64), h));
          break;
        }
      }
      break;
    }
    case GenName::FamG: {
      switch (id.level) {
        case 1: {
          S e4 = gen(named(GenName::E4), T);
          S eta8 = series_pow(R, gen(named(GenName::Eta), T + 1), 8);
          RingElem rho_j = RingElem::zeta24_pow(8 * j);
          r = series_sub(R, e4, scal(rat(12) * rho_j, eta8));
          break;
        }
        case 2: {
          S e22 = gen(named(GenName::EN2, 2), T);
          S h = series_pow(R, gen(named(GenName::Eta2), T + 1), 2);
          RingElem i_j = RingElem::zeta24_pow(6 * j);
          r = series_sub(R, e22, scal(rat(4) * i_j, h));
          break;
        }
        case 3: {
          S e32 = gen(named(GenName::EN2, 3), T);
          S h = series_pow(R, gen(named(GenName::Eta3), T + 1), 2);
          RingElem rho_j = RingElem::zeta24_pow(8 * j);
          r = series_sub(R, e32, scal(rat(3) * const_cbrt4() * rho_j, h));
          break;
        }
        case 4: {
          S e42 = gen(named(GenName::EN2, 4), T);
          S h = series_pow(R, gen(named(GenName::Eta4), T + 1), 4);
          r = series_sub(R, e42, scal(sign_j * rat(8), h));
          break;
        }
      }
      break;
    }
    case GenName::FamFp3: {
      // Same branch resolution as F(3,j), keeping Fp3 = 6*E1m3*F(3,j).
      S e34 = gen(named(GenName::EN4, 3), T);
      S h = series_mul(R, series_pow(R, gen(named(GenName::Eta3), T + 1), 3),
                       gen(named(GenName::E1m3), T + 1));
      r = series_add(R, e34, scal(sign_j * rat(36) * const_sqrt(-3), h));
      break;
    }
    case GenName::FamGp3: {
      S e32sq = series_pow(R, gen(named(GenName::EN2, 3), T), 2);
      S h = series_mul(R, series_pow(R, gen(named(GenName::Eta3), T + 1), 3),
                       gen(named(GenName::E1m3), T + 1));
      r = series_sub(R, e32sq, scal(sign_j * rat(36) * const_sqrt(3), h));
      break;
    }
    case GenName::Famf: {
      switch (id.level) {
        case 1: {
          // 2 E2 - ((3+(-1)^j sqrt(-3))/6) E2(tau/2)
          //      - ((3-(-1)^j sqrt(-3))/6) E2((tau+1)/2)
          S e2 = gen(named(GenName::E2), T);
          S e2deep = gen(named(GenName::E2), 2 * T + 2);
          S half0 = series_shift_scale(R, e2deep, 0, 1, 2);
          S half1 = series_shift_scale(R, e2deep, 1, 1, 2);
          RingElem a = (rat(3) + sign_j * const_sqrt(-3)) * rat(1, 6);
          RingElem b = (rat(3) - sign_j * const_sqrt(-3)) * rat(1, 6);
          r = series_sub(R, series_sub(R, scal(rat(2), e2), scal(a, half0)),
                         scal(b, half1));
          break;
        }
        case 2: {
          // 4 E1m4 + (-1)^j 2i (E1m4(tau/2) - E1m4((tau+1)/2))
          S e = gen(named(GenName::E1m4), T);
          S deep = gen(named(GenName::E1m4), 2 * T + 2);
          S d0 = series_shift_scale(R, deep, 0, 1, 2);
          S d1 = series_shift_scale(R, deep, 1, 1, 2);
          r = series_add(R, scal(rat(4), e),
                         scal(sign_j * rat(2) * const_i(),
                              series_sub(R, d0, d1)));
          break;
        }
        case 3: {
          // 6 E1m3(2 tau) + (-1)^j sqrt(-3) (E1m3(tau/2) - E1m3((tau+1)/2))
          S e = gen(named(GenName::E1m3), T);
          S deep = gen(named(GenName::E1m3), 2 * T + 2);
          S d0 = series_shift_scale(R, deep, 0, 1, 2);
          S d1 = series_shift_scale(R, deep, 1, 1, 2);
          r = series_add(R, scal(rat(6), series_dilate(R, e, 2)),
                         scal(sign_j * const_sqrt(-3), series_sub(R, d0, d1)));
          break;
        }
        case 4: {
          // theta(tau/2 - (-1)^j/4) = theta((tau - (-1)^j/2)/2)
          S th = gen(named(GenName::Theta), 2 * T + 2);
          r = series_shift_scale(R, th, j % 2 == 0 ? -1 : 1, 2, 2);
          break;
        }
      }
      break;
    }
    case GenName::Famg: {
      switch (id.level) {
        case 1: {
          // (3/2) E2 - (1/4) sum_{m != j mod 3} E2((tau+m)/3)
          S e2 = gen(named(GenName::E2), T);
          S deep = gen(named(GenName::E2), 3 * T + 3);
          r = scal(rat(3, 2), e2);
          for (int m = 0; m < 3; ++m) {
            if (m == j) continue;
            r = series_sub(
                R, r, scal(rat(1, 4), series_shift_scale(R, deep, m, 1, 3)));
          }
          break;
        }
        case 2: {
          // sum_{0<=m<=3} (1 - 2 delta_{m,j}) E1m8((tau+m)/4)
          S deep = gen(named(GenName::E1m8), 4 * T + 4);
          bool have = false;
          for (int m = 0; m < 4; ++m) {
            S t = series_shift_scale(R, deep, m, 1, 4);
            if (m == j) t = series_neg(R, t);
            r = have ? series_add(R, r, t) : t;
            have = true;
          }
          break;
        }
        case 4: {
          // 2 theta^2(2 tau) - theta^2((tau+j)/2)
          S th2 = series_pow(R, gen(named(GenName::Theta), T + 1), 2);
          S th2deep = series_pow(R, gen(named(GenName::Theta), 2 * T + 2), 2);
          r = series_sub(R, scal(rat(2), series_dilate(R, th2, 2)),
                         series_shift_scale(R, th2deep, j, 1, 2));
          break;
        }
      }
      break;
    }
  }
  if (r.known_qunits() < T)
    throw Error(ErrorCode::InsufficientPrecision,
                id.str() + ": built to " + rational_str(r.known_qunits()) +
                    " < requested " + std::to_string(T));
  r.weight = id.weight();
  return r;
}

void write_series_file(const std::string& path, const GeneratorId& id,
                       const Series<ExactRing>& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << "eisenfact-series 1\n";
  out << "id " << id.str() << "\n";
  out << "denom " << s.denom << " low " << s.low << " known " << s.known
      << " weight "
      << (s.weight ? rational_str(*s.weight) : std::string("mixed")) << "\n";
  out << "len " << s.coeffs.size() << "\n";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    out << (s.low + static_cast<long>(i));
    std::array<Rational, 24> dense{};
    for (const auto& t : s.coeffs[i].terms()) dense[t.key] = t.coef;
    for (int key = 0; key < 24; ++key) out << " " << rational_str(dense[key]);
    out << "\n";
  }
}

bool read_series_file(const std::string& path, Series<ExactRing>* out_series) {
  std::ifstream in(path);
  if (!in) return false;
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "eisenfact-series" || version != 1) return false;
  std::string kw, idstr, weight;
  Series<ExactRing> s;
  std::size_t len = 0;
  in >> kw >> idstr;                       // id <name>
  in >> kw >> s.denom >> kw >> s.low >> kw >> s.known >> kw >> weight;
  in >> kw >> len;
  if (!in) return false;
  try {
    if (weight == "mixed") {
      s.weight = std::nullopt;
    } else {
      Rational w(weight);
      w.canonicalize();
      s.weight = w;
    }
    s.coeffs.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      long idx;
      in >> idx;
      std::array<Rational, 24> dense;
      for (int key = 0; key < 24; ++key) {
        std::string tok;
        in >> tok;
        if (!in) return false;
        dense[key] = Rational(tok);
        dense[key].canonicalize();
      }
      if (idx != s.low + static_cast<long>(i)) return false;
      s.coeffs.push_back(RingElem::from_dense(dense));
    }
  } catch (const std::invalid_argument&) {
    return false;
  }
  *out_series = std::move(s);
  return true;
}

}  // namespace eisenfact
