#include "oslab/quiver.hpp"

#include <algorithm>
#include <sstream>

#include "oslab/pointcount.hpp"

namespace oslab {

QuiverPresentation QuiverPresentation::local_p2() {
  QuiverPresentation q;
  q.arrows = {{"a1", 1, 2, false}, {"a2", 1, 2, false}, {"a3", 1, 2, false}, {"b1", 2, 3, false},
              {"b2", 2, 3, false}, {"b3", 2, 4, false}, {"c", 3, 4, false},  {"r", 3, 1, true},
              {"s1", 4, 1, true},  {"s2", 4, 1, true}};
  q.potential = {{1, {"r", "b1", "a2"}},        {-1, {"r", "b2", "a1"}}, {1, {"s1", "c", "b1", "a3"}},
                 {-1, {"s1", "b3", "a1"}},      {1, {"s2", "c", "b2", "a3"}}, {-1, {"s2", "b3", "a2"}}};
  return q;
}

const Arrow& QuiverPresentation::arrow(const std::string& name) const {
  for (const auto& a : arrows)
    if (a.name == name) return a;
  throw QuiverError("unknown arrow " + name);
}

std::vector<std::string> QuiverPresentation::broken_terms() const {
  std::vector<std::string> broken;
  for (const auto& term : potential) {
    std::string label;
    for (const auto& a : term.word) label += a;
    bool closed = !term.word.empty();
    for (std::size_t i = 0; closed && i < term.word.size(); ++i) {
      // word[i] follows word[i+1]; the first arrow follows the last one.
      const Arrow& later = arrow(term.word[i]);
      const Arrow& earlier = arrow(term.word[(i + 1) % term.word.size()]);
      closed = earlier.target == later.source;
    }
    if (!closed) broken.push_back(label);
  }
  return broken;
}

bool QuiverPresentation::potential_is_cyclic() const { return broken_terms().empty(); }

DimVector DimVector::make(long v1, long v2, long v3, long v4) {
  if (v1 < 0 || v2 < 0 || v3 < 0 || v4 < 0) throw QuiverError("dimension vectors must be nonnegative");
  return DimVector{{v1, v2, v3, v4}};
}

QuiverDims dims(const DimVector& v, const QuiverPresentation& quiver) {
  QuiverDims d;
  for (const auto& a : quiver.arrows) (a.left ? d.dimAl : d.dimAr) += v[a.source] * v[a.target];
  d.dimA = d.dimAr + d.dimAl;
  for (int i = 1; i <= 4; ++i) d.dimG += v[i] * v[i];
  return d;
}

QuiverDims dims_pairing(const DimVector& v, const DimVector& w, const QuiverPresentation& quiver) {
  QuiverDims d;
  for (const auto& a : quiver.arrows)
    (a.left ? d.dimAl : d.dimAr) += v[a.source] * w[a.target] + w[a.source] * v[a.target];
  d.dimA = d.dimAr + d.dimAl;
  for (int i = 1; i <= 4; ++i) d.dimG += 2 * v[i] * w[i];
  return d;
}

DimVector v_of_sheaf(long k, long chi) { return DimVector::make(2 * k - chi, k - chi, -chi, -chi); }

DimVector v_framed(long k, long n, long N, long r) {
  const long m = N * k - n;
  return DimVector::make(m + 2 * k, m + k, m + r, m);
}

std::string reading_formula(Reading r) {
  switch (r) {
    case Reading::half_gauge_minus_arrows_plus_half_left: return "(G - A)/2 + Al/2";
    case Reading::half_gauge_minus_arrows_plus_left: return "(G - A)/2 + Al";
    case Reading::half_gauge_minus_right: return "(G - Ar)/2";
    case Reading::literal: return "G - A/2 + Al/2";
  }
  return "?";
}

Rational evaluate_reading(Reading r, const QuiverDims& d) {
  const Rational G(d.dimG), A(d.dimA), Ar(d.dimAr), Al(d.dimAl);
  const Rational half(1, 2);
  switch (r) {
    case Reading::half_gauge_minus_arrows_plus_half_left: return (G - A) * half + Al * half;
    case Reading::half_gauge_minus_arrows_plus_left: return (G - A) * half + Al;
    case Reading::half_gauge_minus_right: return (G - Ar) * half;
    case Reading::literal: return G - A * half + Al * half;
  }
  return 0;
}

AuditRow exponent_audit(long k, long r, long n, long N) {
  AuditRow row;
  row.k = k;
  row.r = r;
  row.n = n;
  row.N = N;
  row.v = v_framed(k, n, N, r);
  row.d = dims(row.v);
  row.target = Rational(r * r - k * k) * Rational(1, 2);
  for (Reading reading : kAllReadings) row.values[reading] = evaluate_reading(reading, row.d);
  return row;
}

AuditReport exponent_audit_grid(long kmax, long rmax, long nmax, long Nmax) {
  AuditReport report;
  report.kmax = kmax;
  report.rmax = rmax;
  report.nmax = nmax;
  report.Nmax = Nmax;
  for (Reading reading : kAllReadings) report.matches[reading] = 0;
  for (long k = 1; k <= kmax; ++k)
    for (long r = 0; r <= rmax; ++r)
      for (long N = 0; N <= Nmax; ++N)
        for (long n = -nmax; n <= std::min(nmax, N * k); ++n) {
          AuditRow row = exponent_audit(k, r, n, N);
          if (row.d.dimA != row.d.dimAr + row.d.dimAl) report.dims_additive = false;
          for (Reading reading : kAllReadings)
            if (row.matches(reading)) ++report.matches[reading];
          report.rows.push_back(std::move(row));
        }
  return report;
}

std::vector<Reading> AuditReport::readings_holding_everywhere() const {
  std::vector<Reading> out;
  for (Reading reading : kAllReadings)
    if (!rows.empty() && matches.at(reading) == static_cast<long>(rows.size())) out.push_back(reading);
  return out;
}

std::string AuditReport::markdown() const {
  std::ostringstream md;
  md << "# Quiver exponent audit\n\n";
  md << "Generated by `oslab quiver-audit --kmax " << kmax << " --rmax " << rmax << " --nmax " << nmax << " --Nmax "
     << Nmax << " --format text`.\n\n";
  md << "Arrows: a1, a2, a3: 1->2; b1, b2: 2->3; b3: 2->4; c: 3->4; r: 3->1; s1, s2: 4->1. "
        "Left arrows: r, s1, s2.\n\n";
  md << "For the framed vector v_F = (m + 2k, m + k, m + r, m), m = Nk - n, we evaluate\n"
        "G = dim G(v_F), A = dim A(v_F), Ar = dim A^r(v_F), Al = dim A^l(v_F) and compare each\n"
        "candidate reading of the weight exponent with (r^2 - k^2)/2.\n\n";
  md << "Grid: 1 <= k <= " << kmax << ", 0 <= r <= " << rmax << ", 0 <= N <= " << Nmax << ", |n| <= " << nmax
     << ", n <= Nk (" << rows.size() << " points).\n\n";
  md << "dimA = dimAr + dimAl on every point: " << (dims_additive ? "yes" : "no") << ".\n\n";
  md << "| reading | matching points | holds on whole grid |\n|---|---|---|\n";
  for (Reading reading : kAllReadings) {
    const long m = matches.at(reading);
    md << "| " << reading_formula(reading) << " | " << m << " / " << rows.size() << " | "
       << (m == static_cast<long>(rows.size()) ? "yes" : "no") << " |\n";
  }
  const auto holding = readings_holding_everywhere();
  md << "\n## Conclusion\n\n";
  if (holding.empty()) {
    md << "No reading matches (r^2 - k^2)/2 on the whole grid.\n";
  } else {
    md << "Readings that match (r^2 - k^2)/2 at every grid point:";
    for (Reading reading : holding) md << " `" << reading_formula(reading) << "`";
    md << ".\n";
  }
  const bool identity = std::all_of(rows.begin(), rows.end(), [](const AuditRow& row) {
    return row.d.dimG - row.d.dimAr + row.d.dimAl == row.r * row.r - row.k * row.k;
  });
  const bool half_left_gap = std::all_of(rows.begin(), rows.end(), [](const AuditRow& row) {
    return row.target - row.values.at(Reading::half_gauge_minus_right) == Rational(row.d.dimAl) / 2;
  });
  md << "\nG - Ar + Al = r^2 - k^2 at every point: " << (identity ? "yes" : "no") << ".\n";
  md << "(G - Ar)/2 = (G - A)/2 + Al/2 falls short of the target by exactly Al/2 at every point: "
     << (half_left_gap ? "yes" : "no") << ".\n";
  md << "\n## Points\n\n| k | r | N | n | v_F | G | Ar | Al | target |";
  for (Reading reading : kAllReadings) md << " " << reading_formula(reading) << " |";
  md << "\n|---|---|---|---|---|---|---|---|---|";
  for (std::size_t i = 0; i < kAllReadings.size(); ++i) md << "---|";
  md << "\n";
  for (const auto& row : rows) {
    md << "| " << row.k << " | " << row.r << " | " << row.N << " | " << row.n << " | (" << row.v.v[0] << ","
       << row.v.v[1] << "," << row.v.v[2] << "," << row.v.v[3] << ") | " << row.d.dimG << " | " << row.d.dimAr
       << " | " << row.d.dimAl << " | " << rational_to_string(row.target) << " |";
    for (Reading reading : kAllReadings) md << " " << rational_to_string(row.values.at(reading)) << " |";
    md << "\n";
  }
  return md.str();
}

nlohmann::json AuditReport::json() const {
  nlohmann::json readings = nlohmann::json::array();
  for (Reading reading : kAllReadings)
    readings.push_back({{"reading", reading_formula(reading)},
                        {"matches", matches.at(reading)},
                        {"holds_everywhere", matches.at(reading) == static_cast<long>(rows.size())}});
  nlohmann::json points = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json values = nlohmann::json::object();
    for (Reading reading : kAllReadings) values[reading_formula(reading)] = rational_to_string(row.values.at(reading));
    points.push_back({{"k", row.k},
                      {"r", row.r},
                      {"n", row.n},
                      {"N", row.N},
                      {"v", row.v.v},
                      {"G", row.d.dimG},
                      {"A", row.d.dimA},
                      {"Ar", row.d.dimAr},
                      {"Al", row.d.dimAl},
                      {"target", rational_to_string(row.target)},
                      {"values", values}});
  }
  return {{"grid", {{"kmax", kmax}, {"rmax", rmax}, {"nmax", nmax}, {"Nmax", Nmax}}},
          {"dims_additive", dims_additive},
          {"readings", readings},
          {"points", points}};
}

QuotMotives oracle_quot_motives(const CurveGerm& germ, const CompactCurveData& curve, int lmax, int rmax) {
  const SubstitutionRules to_motive{{Var::y, {1, MonomialKey::of(Var::Lhalf)}}};
  const Series sym = series_substitute(symmetric_product_series(curve.hodge_punctured, lmax), to_motive);
  QuotMotives out;
  for (int r = 0; r <= rmax; ++r) {
    std::vector<Series> nested;
    for (int j = 0; j <= lmax; ++j) {
      const CountPolynomial f = nested_pair_polynomial(germ, j, r);
      if (!f.verified || !f.integral()) throw QuiverError("nested-pair count is not a verified integral polynomial");
      nested.push_back(f.as_series(Var::Lhalf, 2));
    }
    for (int l = 0; l <= lmax; ++l) {
      Series motive;
      for (int j = 0; j <= l; ++j) motive += nested[static_cast<std::size_t>(j)] * sym.coefficient_of(Var::q, 2 * (l - j));
      out[{l, r}] = motive;
    }
  }
  return out;
}

MotivicAssembly motivic_smallb_assemble(const CurveGerm& germ, const CompactCurveData& curve, int rmax, int lmax,
                                        const QuotMotives& quot_motives) {
  const long chi = curve.chi_OC;
  const long k2 = static_cast<long>(curve.degree) * curve.degree;
  MotivicAssembly out;

  // Z^mot_{0+} = L^{(1-k^2-chi)/2} u^chi sum u^l T^r L^{(r^2-l)/2} [Q^{[l,r]}]
  out.z0plus = Series(make_caps({{Var::u, chi + lmax}, {Var::T, rmax}}));
  for (int l = 0; l <= lmax; ++l)
    for (int r = 0; r <= rmax; ++r) {
      auto it = quot_motives.find({l, r});
      if (it == quot_motives.end())
        throw QuiverError("missing Quot motive for (l, r) = (" + std::to_string(l) + ", " + std::to_string(r) + ")");
      MonomialKey w;
      w[Var::u] = chi + l;
      w[Var::T] = r;
      w[Var::Lhalf] = 1 - k2 - chi + static_cast<std::int64_t>(r) * r - l;
      out.z0plus += it->second.shifted(w);
    }

  const SubstitutionRules rules{{Var::u, {1, MonomialKey::of(Var::q, 2) * MonomialKey::of(Var::Lhalf)}},
                                {Var::T, {1, MonomialKey::of(Var::a, 2)}}};
  const Caps target = make_caps({{Var::q, 2 * (chi + lmax)}, {Var::a, 2 * static_cast<std::int64_t>(rmax)}});
  out.lhs = series_substitute(out.z0plus, rules, target);

  // The weight of u^{chi+l} T^r after substitution carries Lhalf^{1-k^2+r^2}.
  out.cancellation = true;
  for (int l = 0; l <= lmax; ++l)
    for (int r = 0; r <= rmax; ++r) {
      MonomialKey w;
      w[Var::u] = chi + l;
      w[Var::T] = r;
      w[Var::Lhalf] = 1 - k2 - chi + static_cast<std::int64_t>(r) * r - l;
      const Series image = series_substitute(Series::monomial(w), rules);
      const MonomialKey key = image.terms().begin()->first;
      if (key[Var::Lhalf] != 1 - k2 + static_cast<std::int64_t>(r) * r) out.cancellation = false;
    }

  const Series zmot = motivic_compact_series(curve, germ, lmax);
  Series rhs;
  for (const auto& [key, c] : zmot.terms()) {
    MonomialKey w = key;
    w[Var::q] += 2 * chi;
    w[Var::Lhalf] += 1 - k2;
    rhs.add_term(w, c);
  }
  out.rhs = rhs.truncated(target);
  return out;
}

}  // namespace oslab
