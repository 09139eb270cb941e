#pragma once

// Exhaustive reference for the column model. Works on its own plain
// description of the dictionary and enumerates every joint configuration
// (t, u_1..N, z_1..N) in linear space. Only meant for tiny instances.

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace puc::oracle {

struct Unit {
  std::string name;
  std::set<std::string> symbols;
};

struct Model {
  // dimension -> units, both in name order
  std::map<std::string, std::vector<Unit>> dims;
  double w_regular = 0.98;
  double w_missing = 0.01;
  double w_anomalous = 0.01;
  int alphabet = 128;
};

enum class Z { kRegular, kMissing, kAnomalous };

// Label index convention: 0..L-1 units, L missing, L+1 anomalous.
struct Result {
  std::vector<std::string> dims;
  std::vector<double> dim_posterior;
  // per dimension, per row
  std::map<std::string, std::vector<std::vector<double>>> label_posterior;
  // per dimension, per row, per label (L+2) -> distribution over units; empty
  // when the label has zero posterior mass
  std::map<std::string, std::vector<std::vector<std::vector<double>>>> unit_given_label;
  // per dimension: sum over rows of p(u_i = l | t, x)
  std::map<std::string, std::vector<double>> column_scores;
};

inline double code_points(const std::string& s) {
  double n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

inline double likelihood(const Model& m, const std::optional<std::string>& x, const Unit& u, Z z) {
  switch (z) {
    case Z::kRegular:
      return x && u.symbols.count(*x) ? 1.0 / static_cast<double>(u.symbols.size()) : 0.0;
    case Z::kMissing:
      return x ? 0.0 : 1.0;
    case Z::kAnomalous: {
      if (!x) return 0.0;
      const double n = code_points(*x);
      return std::pow(1.0 / m.alphabet, n) * std::pow(0.5, n) * 0.5;
    }
  }
  return 0.0;
}

inline double weight(const Model& m, Z z) {
  return z == Z::kRegular ? m.w_regular : z == Z::kMissing ? m.w_missing : m.w_anomalous;
}

inline Result enumerate(const Model& m, const std::vector<std::optional<std::string>>& xs) {
  Result r;
  const double p_t = 1.0 / static_cast<double>(m.dims.size());
  const std::size_t n = xs.size();
  std::vector<double> dim_mass;

  for (const auto& [t, units] : m.dims) {
    r.dims.push_back(t);
    const std::size_t L = units.size();
    const double p_u = 1.0 / static_cast<double>(L);

    // every (u, z) state; zero-probability states are kept, the product is
    // simply zero for them
    struct State {
      std::size_t unit;
      Z z;
    };
    std::vector<State> states;
    for (std::size_t u = 0; u < L; ++u) {
      for (Z z : {Z::kRegular, Z::kMissing, Z::kAnomalous}) states.push_back({u, z});
    }
    // per-row per-state factor p(u|t) w^z p(x|u,z)
    std::vector<std::vector<double>> factor(n, std::vector<double>(states.size()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < states.size(); ++s) {
        factor[i][s] = p_u * weight(m, states[s].z) * likelihood(m, xs[i], units[states[s].unit], states[s].z);
      }
    }

    double total = 0.0;
    // joint mass of (row i, label j)
    std::vector<std::vector<double>> label_mass(n, std::vector<double>(L + 2, 0.0));
    // joint mass of (row i, label j, unit l)
    std::vector<std::vector<std::vector<double>>> lu_mass(
        n, std::vector<std::vector<double>>(L + 2, std::vector<double>(L, 0.0)));

    std::vector<std::size_t> idx(n, 0);
    while (true) {
      double p = p_t;
      for (std::size_t i = 0; i < n && p > 0.0; ++i) p *= factor[i][idx[i]];
      if (p > 0.0) {
        total += p;
        for (std::size_t i = 0; i < n; ++i) {
          const State& s = states[idx[i]];
          const std::size_t j =
              s.z == Z::kRegular ? s.unit : s.z == Z::kMissing ? L : L + 1;
          label_mass[i][j] += p;
          lu_mass[i][j][s.unit] += p;
        }
      }
      std::size_t k = 0;
      while (k < n && ++idx[k] == states.size()) idx[k++] = 0;
      if (k == n) break;
    }
    dim_mass.push_back(total);

    auto& lp = r.label_posterior[t];
    auto& ul = r.unit_given_label[t];
    auto& cs = r.column_scores[t];
    cs.assign(L, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(L + 2, 0.0);
      std::vector<std::vector<double>> given(L + 2);
      for (std::size_t j = 0; j < L + 2; ++j) {
        row[j] = total > 0.0 ? label_mass[i][j] / total : 0.0;
        if (label_mass[i][j] > 0.0) {
          given[j].resize(L);
          for (std::size_t l = 0; l < L; ++l) given[j][l] = lu_mass[i][j][l] / label_mass[i][j];
        }
        for (std::size_t l = 0; l < L; ++l) {
          if (total > 0.0) cs[l] += lu_mass[i][j][l] / total;
        }
      }
      lp.push_back(std::move(row));
      ul.push_back(std::move(given));
    }
  }

  double z = 0.0;
  for (double v : dim_mass) z += v;
  for (double v : dim_mass) r.dim_posterior.push_back(v / z);
  return r;
}

}  // namespace puc::oracle
