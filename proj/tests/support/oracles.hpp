// Copyright (c) 2026 The slrplan Authors
// All rights reserved.
//
// This source code is licensed under the Apache 2.0 license found in the
// LICENSE file in the root directory of this source tree.
//
// Reference implementations used only by the tests. They share no code with
// the library's numeric paths: plain loops over std::vector, 50-digit binary
// floating point for anything that is compared at tight tolerance.
#ifndef SLRPLAN_TESTS_ORACLES_HPP
#define SLRPLAN_TESTS_ORACLES_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;
using RealVector = std::vector<Real>;

inline RealVector widen(const std::vector<double>& v) { return RealVector(v.begin(), v.end()); }

inline Real dot(const RealVector& a, const RealVector& b) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Real cosine(const RealVector& a, const RealVector& b) {
  return dot(a, b) / (sqrt(dot(a, a)) * sqrt(dot(b, b)));
}

// 1 - a.b / (|a||b|) in 50-digit arithmetic, rounded to double at the end.
inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  const RealVector x = widen(a);
  const RealVector y = widen(b);
  return static_cast<double>(Real(1) - cosine(x, y));
}

// Rank of v[i] = 1 + #{smaller} + (#{equal} - 1) / 2, by direct counting.
inline std::vector<Real> ranks_by_counting(const std::vector<double>& v) {
  std::vector<Real> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) ++less;
      if (v[j] == v[i]) ++equal;
    }
    r[i] = Real(1 + less) + Real(equal - 1) / 2;
  }
  return r;
}

inline Real pearson(const std::vector<Real>& x, const std::vector<Real>& y) {
  const Real n = static_cast<double>(x.size());
  Real mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  Real sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / sqrt(sxx * syy);
}

// Spearman rho as Pearson over counted fractional ranks; nullopt when either
// side is constant.
inline std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks_by_counting(x);
  const auto ry = ranks_by_counting(y);
  const bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
  const bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
  if (x_const || y_const) return std::nullopt;
  return static_cast<double>(pearson(rx, ry));
}

/// Token -> vector table read with a plain istringstream parser.
struct Model {
  std::string name;
  std::map<std::string, RealVector> vectors;
};

inline Model read_model(const std::string& path, const std::string& name) {
  Model m;
  m.name = name;
  std::ifstream in(path);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (ss >> f) fields.push_back(f);
    if (fields.empty()) continue;
    if (first && fields.size() == 2 && fields[0].find_first_not_of("0123456789") == std::string::npos &&
        fields[1].find_first_not_of("0123456789") == std::string::npos) {
      first = false;
      continue;
    }
    first = false;
    RealVector v;
    for (std::size_t i = 1; i < fields.size(); ++i) v.push_back(Real(std::stod(fields[i])));
    m.vectors[fields[0]] = v;
  }
  return m;
}

struct DocVector {
  RealVector vector;
  std::size_t matched = 0;
  std::size_t total = 0;
};

// Phrase, then constituent average, then miss; mean over matched n-grams.
inline std::optional<DocVector> vectorize(const Model& m, const std::vector<std::string>& ngrams) {
  std::optional<RealVector> sum;
  DocVector out;
  out.total = ngrams.size();
  auto add = [&](const RealVector& v) {
    if (!sum) sum = RealVector(v.size(), Real(0));
    for (std::size_t i = 0; i < v.size(); ++i) (*sum)[i] += v[i];
  };
  for (const auto& gram : ngrams) {
    std::string phrase = gram;
    std::replace(phrase.begin(), phrase.end(), ' ', '_');
    if (auto it = m.vectors.find(phrase); it != m.vectors.end()) {
      add(it->second);
      ++out.matched;
      continue;
    }
    std::istringstream ss(gram);
    std::string word;
    std::optional<RealVector> part;
    int found = 0;
    while (ss >> word) {
      if (auto it = m.vectors.find(word); it != m.vectors.end()) {
        if (!part) part = RealVector(it->second.size(), Real(0));
        for (std::size_t i = 0; i < it->second.size(); ++i) (*part)[i] += it->second[i];
        ++found;
      }
    }
    if (found > 0) {
      for (auto& c : *part) c /= found;
      add(*part);
      ++out.matched;
    }
  }
  if (out.matched == 0) return std::nullopt;
  for (auto& c : *sum) c /= static_cast<double>(out.matched);
  out.vector = *sum;
  return out;
}

struct Scored {
  std::string doc_id;
  Real distance;
};

// Sort by (distance, doc_id) over 50-digit distances.
inline std::vector<Scored> rank(const RealVector& query, const std::map<std::string, RealVector>& docs) {
  std::vector<Scored> out;
  for (const auto& [id, v] : docs) out.push_back({id, Real(1) - cosine(query, v)});
  std::sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.doc_id < b.doc_id;
  });
  return out;
}

}  // namespace oracle

#endif  // SLRPLAN_TESTS_ORACLES_HPP
