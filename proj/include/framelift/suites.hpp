#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "framelift/catalog.hpp"
#include "framelift/report.hpp"

namespace framelift {

// Acceptance tolerances that are not expressed through FDConfig.
inline constexpr double kLiftDilatationTol = 1e-4;
inline constexpr double kDirectTensionTol = 1e-3;
inline constexpr double kReferenceTensionTol = 5e-3;
// Lower bound for quantities expected to be non-zero.
inline constexpr double kNonzeroFloor = 0.1;

// Christoffel symmetry, metric compatibility, torsion, first Bianchi, metric-derivative
// consistency, basis independence of <P|Q>, and constant sectional curvature when given.
std::vector<CheckReport> core_checks(const ChartManifold& M, const std::string& subject,
                                     const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg,
                                     std::optional<double> sectional = std::nullopt);

// Bracket displays on L(M) against FD brackets on the tautological chart.
std::vector<CheckReport> bracket_checks(std::shared_ptr<const ChartManifold> M, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg);

// Levi-Civita displays on L(M) or O(M) against the total-space oracle.
std::vector<CheckReport> connection_checks(std::shared_ptr<const ChartManifold> M, Bundle bundle,
                                           const std::string& subject, const std::vector<Vec>& points,
                                           std::uint64_t seed, const FDConfig& cfg);

std::vector<CheckReport> tangent_checks(const SubmersionSpec& phi, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg);

// D = H^phi. O(D) Levi-Civita readings are audit rows, evaluated at up to od_points points.
std::vector<CheckReport> adapted_checks(const SubmersionSpec& phi, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg,
                                        bool expected_integrable, int od_points = 10);

std::vector<CheckReport> lift_checks(const SubmersionSpec& phi, const std::string& subject,
                                     const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg);

std::vector<CheckReport> theorem_checks(const CatalogEntry& e, const std::vector<Vec>& points, std::uint64_t seed,
                                        const FDConfig& cfg);

// One suite over one catalog entry, at samples seeded points of the source.
std::vector<CheckReport> run_suite(const CatalogEntry& e, const std::string& suite, int samples, std::uint64_t seed,
                                   const FDConfig& cfg);

}  // namespace framelift
