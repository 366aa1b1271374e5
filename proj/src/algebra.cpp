#include "branchlab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "branchlab/format.hpp"

namespace branchlab {

namespace {

bool contains(const std::vector<double>& carrier, double value, double eps) {
  return std::any_of(carrier.begin(), carrier.end(),
                     [&](double c) { return std::abs(c - value) <= eps; });
}

ClaimResult holds(std::string claim, std::string detail = "") {
  return ClaimResult{std::move(claim), Verdict::kHolds, std::nullopt, std::move(detail)};
}

ClaimResult fails(std::string claim, double counterexample, std::string detail) {
  return ClaimResult{std::move(claim), Verdict::kFails, counterexample, std::move(detail)};
}

ClaimResult vacuous(std::string claim, std::string detail) {
  return ClaimResult{std::move(claim), Verdict::kVacuous, std::nullopt, std::move(detail)};
}

}  // namespace

const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kVacuous: return "vacuous";
  }
  return "verdict";
}

ProbabilitySet ProbabilitySet::from_wavefunction(const WaveFunction& wf,
                                                 const Tolerances& tol) {
  std::vector<double> values;
  values.reserve(wf.branches.size());
  for (const auto& branch : wf.branches) {
    values.push_back(branch.born_probability());
  }
  return from_values(std::move(values), tol);
}

ProbabilitySet ProbabilitySet::from_values(std::vector<double> values,
                                           const Tolerances& tol) {
  std::sort(values.begin(), values.end(), std::greater<double>());
  ProbabilitySet ps;
  ps.values = std::move(values);
  for (const double value : ps.values) {
    if (ps.carrier.empty() || std::abs(ps.carrier.back() - value) > tol.grade) {
      ps.carrier.push_back(value);
    }
  }
  return ps;
}

std::vector<const ClaimResult*> AlgebraReport::claims() const {
  return {&well_order,  &has_infimum,       &has_supremum, &pairwise_min_sup,
          &lattice,     &orthocomplemented, &distributive, &boolean_algebra};
}

ClaimResult well_order_check(const ProbabilitySet& ps) {
  if (ps.values.size() < 2) {
    return vacuous("well_order", "fewer than two values; nothing to order");
  }
  if (ps.values.size() > ps.carrier.size()) {
    return holds("well_order", "well-ordered up to same-grade classes; ties present");
  }
  return holds("well_order",
               "finite chain of " + std::to_string(ps.carrier.size()) + " grades");
}

AlgebraReport verify(const ProbabilitySet& ps, const Tolerances& tol,
                     std::size_t carrier_cap) {
  AlgebraReport report;
  const auto& carrier = ps.carrier;

  if (carrier.size() > carrier_cap) {
    const std::string detail = "carrier of " + std::to_string(carrier.size()) +
                               " grades exceeds the exhaustive-check cap of " +
                               std::to_string(carrier_cap);
    report.well_order = vacuous("well_order", detail);
    report.has_infimum = vacuous("has_infimum", detail);
    report.has_supremum = vacuous("has_supremum", detail);
    report.pairwise_min_sup = vacuous("pairwise_min_sup", detail);
    report.lattice = vacuous("lattice", detail);
    report.orthocomplemented = vacuous("orthocomplemented", detail);
    report.distributive = vacuous("distributive", detail);
    report.boolean_algebra = vacuous("boolean_algebra", detail);
    return report;
  }

  report.well_order = well_order_check(ps);

  if (carrier.empty()) {
    report.has_infimum = vacuous("has_infimum", "empty carrier");
    report.has_supremum = vacuous("has_supremum", "empty carrier");
    report.pairwise_min_sup = vacuous("pairwise_min_sup", "empty carrier");
    report.lattice = vacuous("lattice", "empty carrier");
    report.orthocomplemented = vacuous("orthocomplemented", "empty carrier");
    report.distributive = vacuous("distributive", "empty carrier");
    report.boolean_algebra = vacuous("boolean_algebra", "empty carrier");
    return report;
  }

  report.has_infimum =
      holds("has_infimum", "infimum " + format_double(carrier.back()));
  report.has_supremum =
      holds("has_supremum", "supremum " + format_double(carrier.front()));

  report.pairwise_min_sup = holds("pairwise_min_sup");
  for (const double a : carrier) {
    for (const double b : carrier) {
      if (!contains(carrier, std::min(a, b), tol.grade) ||
          !contains(carrier, std::max(a, b), tol.grade)) {
        report.pairwise_min_sup = fails("pairwise_min_sup", a,
                                        "min/sup of a pair left the carrier");
      }
    }
  }

  // Lattice laws for min/max: idempotence, commutativity, absorption,
  // associativity. Exact on doubles; a failure means a bug, not a property
  // of the carrier.
  report.lattice = holds("lattice");
  for (const double a : carrier) {
    if (std::min(a, a) != a || std::max(a, a) != a) {
      report.lattice = fails("lattice", a, "idempotence violated");
    }
    for (const double b : carrier) {
      if (std::min(a, b) != std::min(b, a) || std::max(a, b) != std::max(b, a)) {
        report.lattice = fails("lattice", a, "commutativity violated");
      }
      if (std::min(a, std::max(a, b)) != a || std::max(a, std::min(a, b)) != a) {
        report.lattice = fails("lattice", a, "absorption violated");
      }
      for (const double c : carrier) {
        if (std::min(a, std::min(b, c)) != std::min(std::min(a, b), c) ||
            std::max(a, std::max(b, c)) != std::max(std::max(a, b), c)) {
          report.lattice = fails("lattice", a, "associativity violated");
        }
      }
    }
  }

  report.orthocomplemented = holds("orthocomplemented");
  for (const double p : carrier) {
    if (!contains(carrier, 1.0 - p, tol.grade)) {
      report.orthocomplemented =
          fails("orthocomplemented", p,
                "1-p = " + format_double(1.0 - p) + " is not in the carrier");
      break;
    }
  }

  report.distributive = holds("distributive");
  for (const double a : carrier) {
    for (const double b : carrier) {
      for (const double c : carrier) {
        if (std::min(a, std::max(b, c)) != std::max(std::min(a, b), std::min(a, c)) ||
            std::max(a, std::min(b, c)) != std::min(std::max(a, b), std::max(a, c))) {
          report.distributive = fails("distributive", a, "distributive law violated");
        }
      }
    }
  }

  // Boolean structure <carrier, not, +, 0, 1>: "+" read as max, the
  // constants as the literal reals. Requires the lattice claims above plus
  // membership of both constants and the complement laws.
  const auto boolean_failure = [&]() -> std::optional<ClaimResult> {
    if (report.lattice.verdict != Verdict::kHolds) {
      return fails("boolean_algebra", 0.0, "lattice laws failed");
    }
    if (report.orthocomplemented.verdict != Verdict::kHolds) {
      return ClaimResult{"boolean_algebra", Verdict::kFails,
                         report.orthocomplemented.counterexample,
                         "carrier is not closed under complement"};
    }
    if (report.distributive.verdict != Verdict::kHolds) {
      return fails("boolean_algebra", 0.0, "distributivity failed");
    }
    if (!contains(carrier, 0.0, tol.grade)) {
      return fails("boolean_algebra", 0.0, "constant 0 is missing from the carrier");
    }
    if (!contains(carrier, 1.0, tol.grade)) {
      return fails("boolean_algebra", 1.0, "constant 1 is missing from the carrier");
    }
    for (const double p : carrier) {
      const double complement = 1.0 - p;
      if (std::abs(std::max(p, complement) - 1.0) > tol.grade) {
        return fails("boolean_algebra", p,
                     "complement law p + not p = 1 violated at p = " + format_double(p));
      }
      if (std::abs(std::min(p, complement) - 0.0) > tol.grade) {
        return fails("boolean_algebra", p,
                     "complement law p * not p = 0 violated at p = " + format_double(p));
      }
    }
    return std::nullopt;
  }();
  report.boolean_algebra =
      boolean_failure.has_value() ? *boolean_failure : holds("boolean_algebra");

  return report;
}

}  // namespace branchlab
