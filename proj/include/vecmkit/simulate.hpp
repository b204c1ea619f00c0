#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecmkit/dataset.hpp"

namespace vecmkit::sim {

/// Deterministic normal generator: mt19937_64 seeded through SplitMix64,
/// uniforms from the top 53 bits, normals by inverse CDF (AS241). Identical
/// output on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();  // in (0, 1)
    double gaussian(); // standard normal

private:
    std::mt19937_64 engine_;
};

enum class ProcessKind { white_noise, random_walk, var, vecm };

ProcessKind parse_process_kind(const std::string& text);
std::string to_string(ProcessKind k);

/// Generator description. Unused parameter blocks may stay empty: var needs
/// var_coefficients; vecm needs alpha/beta and optionally gamma. Innovation
/// covariance defaults to the identity, drift to zero.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::white_noise;
    int K = 1;
    int T = 100;
    std::uint64_t seed = 0;
    Eigen::VectorXd drift;                         // K
    std::vector<Eigen::MatrixXd> var_coefficients; // A_1..A_p, each K x K
    Eigen::MatrixXd alpha;                         // K x r
    Eigen::MatrixXd beta;                          // K x r
    std::vector<Eigen::MatrixXd> gamma;            // Gamma_1..Gamma_{p-1}
    Eigen::MatrixXd innovation_covariance;         // K x K
    std::vector<std::string> names;                // defaults x1..xK
    int first_period = 1;
};

/// Draw a panel from the spec. Stationary kinds (white_noise, var) discard a
/// 100-period burn-in; unit-root kinds (random_walk, vecm) start at zero with
/// no burn-in. Deterministic given the seed.
Dataset simulate(const ProcessSpec& spec);

inline constexpr std::uint64_t kSurrogateSeed = 7;

/// The bundled stand-in for the unpublished five-variable Nigeria panel:
/// ROA, INF, MSS, EXCH, UPY over 1993-2020 (T = 28), drawn from a rank-1
/// VECM with two short-run lag matrices (fixed parameters in simulate.cpp).
Dataset make_surrogate_panel(std::uint64_t seed = kSurrogateSeed);

} // namespace vecmkit::sim
