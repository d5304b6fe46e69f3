#pragma once

// Deterministic record builders shared by the model-layer tests.

#include <random>
#include <string>
#include <vector>

#include "incistat/clean.hpp"

namespace fixtures {

using incistat::clean::AnalysisRecord;

inline AnalysisRecord base_record(int index) {
    AnalysisRecord r;
    r.id = "R" + std::to_string(index);
    r.year = 2000 + index % 24;
    r.month = 1 + index % 12;
    r.latitude = 30.0 + index % 15;
    r.longitude = -110.0 + index % 40;
    r.killed = 0;
    r.wounded = 0;
    r.casualties = 0;
    r.shooter_age = 17.0;
    r.shooter_gender = incistat::clean::Gender::Male;
    r.race = incistat::clean::RaceKind::Black;
    r.weapon_type = incistat::clean::WeaponKind::Handgun;
    r.targets = incistat::ingest::TargetsKind::VictimsTargeted;
    r.during_classes = incistat::clean::TriState::Yes;
    r.accomplice = incistat::clean::TriState::No;
    r.hostages = incistat::clean::TriState::No;
    r.shooter_killed = incistat::clean::TriState::No;
    r.gang_related = incistat::clean::TriState::No;
    r.bullied = incistat::clean::TriState::No;
    r.domestic_violence = incistat::clean::TriState::No;
    r.location_type = incistat::ingest::LocationKind::Outside;
    return r;
}

/// Records with randomized factors and numerics, no missing values.
inline std::vector<AnalysisRecord> random_records(uint64_t seed, size_t n) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> age(8, 60);
    std::uniform_int_distribution<int> shots(0, 25);
    std::uniform_int_distribution<int> count(0, 12);
    std::uniform_int_distribution<int> four(0, 3);
    std::uniform_int_distribution<int> two(0, 1);

    std::vector<AnalysisRecord> out;
    for (size_t i = 0; i < n; ++i) {
        auto r = base_record(static_cast<int>(i));
        r.shooter_age = age(gen);
        r.shots_fired = shots(gen);
        r.killed = count(gen);
        r.wounded = count(gen);
        r.casualties = r.killed + r.wounded;
        r.targets = static_cast<incistat::ingest::TargetsKind>(four(gen));
        r.shooter_gender = static_cast<incistat::clean::Gender>(four(gen));
        r.bullied = two(gen) ? incistat::clean::TriState::Yes : incistat::clean::TriState::No;
        r.accomplice = two(gen) ? incistat::clean::TriState::Yes : incistat::clean::TriState::No;
        r.during_classes =
            two(gen) ? incistat::clean::TriState::Yes : incistat::clean::TriState::No;
        const int weapons[] = {0, 2, 4, 5};  // handgun, rifle, shotgun, other
        r.weapon_type = static_cast<incistat::clean::WeaponKind>(weapons[four(gen)]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace fixtures
