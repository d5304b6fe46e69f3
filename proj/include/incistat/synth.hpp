#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incistat/common.hpp"

namespace incistat::synth {

/// Generator settings. Casualty counts are drawn from NB(mu, theta) with
/// log(mu) = beta0 + beta1 * targeted + beta2 * (shooter_age - 20) / 10.
/// Category prevalences default to the observed production shares (handgun
/// 72.65%, victims targeted 56.77%, male-dominant gender mix).
struct SynthSpec {
    size_t n_incidents = 800;
    int year_min = 1966;
    int year_max = 2023;
    std::vector<double> beta = {0.5, 0.8, -0.3};
    double theta = 1.5;
    /// Fraction of shooter rows whose age gets blanked or replaced by a
    /// child/teen/adult label; also drives duplicate-incident injection.
    double mess_rate = 0.0;

    // merged weapon categories: handgun, multiple handguns, rifle,
    // multiple rifles, shotgun, other, unknown, multiple unknown, no data
    std::vector<double> weapon_prevalence = {0.7265, 0.0230, 0.0521, 0.0037, 0.0295,
                                             0.0492, 0.0098, 0.0119, 0.0943};
    // victims targeted, random shooting, both, neither
    std::vector<double> targets_prevalence = {0.5677, 0.1630, 0.1438, 0.1255};
    // per-shooter gender: male, female, unknown
    std::vector<double> gender_prevalence = {0.75, 0.04, 0.21};
    // per-shooter race: black, white, hispanic, asian, other, missing
    std::vector<double> race_prevalence = {0.166, 0.111, 0.039, 0.006, 0.008, 0.670};

    void validate() const;  // throws DataError when prevalences do not sum to 1
};

struct SynthTables {
    std::string incidents;
    std::string shooters;
    std::string weapons;
    std::string victims;
};

/// Deterministic for a given (spec, seed): identical bytes on every platform.
SynthTables generate_synthetic(const SynthSpec& spec, uint64_t seed);

}  // namespace incistat::synth
