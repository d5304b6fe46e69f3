#include <doctest.h>

#include <algorithm>

#include "incistat/clean.hpp"

using namespace incistat;

namespace {

ingest::RawShooter shooter(const std::string& incident, const std::string& age,
                           const std::string& gender = "", const std::string& race = "") {
    ingest::RawShooter s;
    s.incident = incident;
    s.age_raw = age;
    s.gender_raw = gender;
    s.race_raw = race;
    return s;
}

ingest::JoinResult tiny_join() {
    ingest::JoinResult join;
    ingest::RawIncident a;
    a.id = "A1";
    a.date = {2016, 3, 10};
    a.latitude = 33.0;
    a.longitude = -96.0;
    a.killed = 1;
    a.wounded = 3;
    a.targets = ingest::TargetsKind::VictimsTargeted;
    a.during_classes = true;

    ingest::RawIncident b;
    b.id = "B2";
    b.date = {2019, 9, 1};
    b.latitude = 40.0;
    b.longitude = -74.0;
    b.killed = 0;
    b.wounded = 0;

    join.incidents.push_back({a,
                              {shooter("A1", "14", "Male", "Black"),
                               shooter("A1", "20", "Female", "White")},
                              {{"A1", "Handgun"}, {"A1", "Handgun"}},
                              {}});
    join.incidents.push_back({b, {shooter("B2", "17", "Male", "Black")}, {{"B2", "Rifle"}}, {}});
    return join;
}

}  // namespace

TEST_CASE("compute_age_policy strata medians") {
    std::vector<ingest::RawShooter> shooters;
    for (const char* age : {"8", "10", "15", "16", "17", "20", "30"})
        shooters.push_back(shooter("X", age));
    const auto policy = clean::compute_age_policy(shooters);
    CHECK(policy.overall_median == 16.0);
    CHECK(policy.child_median == 9.0);
    CHECK(policy.teen_median == 16.0);
    CHECK(policy.adult_median == 25.0);
}

TEST_CASE("compute_age_policy: single value and fallbacks") {
    const auto one = clean::compute_age_policy(std::vector{shooter("X", "17")});
    CHECK(one.overall_median == 17.0);
    CHECK(one.child_median == 17.0);  // empty stratum falls back
    CHECK(one.teen_median == 17.0);
    CHECK(one.adult_median == 17.0);

    CHECK_THROWS_AS(clean::compute_age_policy(std::vector{shooter("X", "teen")}), DataError);
    CHECK_THROWS_AS(clean::compute_age_policy(std::vector<ingest::RawShooter>{}), DataError);
}

TEST_CASE("compute_age_policy: even-sized stratum uses the central pair mean") {
    std::vector<ingest::RawShooter> shooters;
    for (const char* age : {"14", "15", "16", "17"}) shooters.push_back(shooter("X", age));
    CHECK(clean::compute_age_policy(shooters).teen_median == 15.5);
}

TEST_CASE("impute_age applies keyword, blank, and diagnostic rules") {
    clean::AgeImputationPolicy policy{17.0, 9.0, 16.0, 25.0};
    CHECK(clean::impute_age("teen", policy).years == 16.0);
    CHECK(clean::impute_age("Child", policy).years == 9.0);
    CHECK(clean::impute_age("ADULT", policy).years == 25.0);
    CHECK(clean::impute_age("", policy).years == 17.0);
    CHECK(clean::impute_age("21", policy).years == 21.0);

    const auto junk = clean::impute_age("unclear note", policy);
    CHECK(junk.years == 17.0);
    CHECK(junk.diagnosed);
    const auto out_of_range = clean::impute_age("150", policy);
    CHECK(out_of_range.years == 17.0);
    CHECK(out_of_range.diagnosed);
}

TEST_CASE("merge_gender") {
    using clean::Gender;
    CHECK(clean::merge_gender(std::vector<std::string>{"Male", "male"}) == Gender::Male);
    CHECK(clean::merge_gender(std::vector<std::string>{"Male", "Female"}) == Gender::Multiple);
    CHECK(clean::merge_gender(std::vector<std::string>{}) == Gender::Unknown);
    CHECK(clean::merge_gender(std::vector<std::string>{"", "NA"}) == Gender::Unknown);
    CHECK(clean::merge_gender(std::vector<std::string>{"F"}) == Gender::Female);
}

TEST_CASE("merge_race") {
    using clean::RaceKind;
    CHECK(clean::merge_race(std::vector<std::string>{"Black", "black"}) == RaceKind::Black);
    CHECK(clean::merge_race(std::vector<std::string>{"Black", "White"}) == RaceKind::Multiple);
    CHECK(clean::merge_race(std::vector<std::string>{}) == RaceKind::Missing);
    CHECK(clean::merge_race(std::vector<std::string>{"Indigenous"}) == RaceKind::Other);
    CHECK(clean::merge_race(std::vector<std::string>{"latino"}) == RaceKind::Hispanic);
}

TEST_CASE("merge_weapon") {
    using clean::WeaponKind;
    CHECK(clean::merge_weapon(std::vector<std::string>{"Handgun"}) == WeaponKind::Handgun);
    CHECK(clean::merge_weapon(std::vector<std::string>{"Handgun", "handgun"}) ==
          WeaponKind::MultipleHandguns);
    CHECK(clean::merge_weapon(std::vector<std::string>{"Rifle", "Rifle"}) ==
          WeaponKind::MultipleRifles);
    CHECK(clean::merge_weapon(std::vector<std::string>{"Handgun", "Rifle"}) ==
          WeaponKind::MultipleUnknown);
    CHECK(clean::merge_weapon(std::vector<std::string>{}) == WeaponKind::NoData);
    CHECK(clean::merge_weapon(std::vector<std::string>{"  "}) == WeaponKind::Unknown);
    CHECK(clean::merge_weapon(std::vector<std::string>{"Shotgun", "Shotgun"}) ==
          WeaponKind::MultipleUnknown);
}

TEST_CASE("build_analysis_table composes the cleaning rules") {
    const auto result = clean::build_analysis_table(tiny_join());
    REQUIRE(result.records.size() == 2);
    const auto& first = result.records[0];  // 2016 sorts before 2019
    CHECK(first.id == "A1");
    CHECK(first.casualties == 4);
    CHECK(first.shooter_age == 17.0);  // mean of 14 and 20
    CHECK(first.shooter_gender == clean::Gender::Multiple);
    CHECK(first.race == clean::RaceKind::Multiple);
    CHECK(first.weapon_type == clean::WeaponKind::MultipleHandguns);
    CHECK(first.during_classes == clean::TriState::Yes);
    CHECK(first.accomplice == clean::TriState::Missing);

    const auto& second = result.records[1];
    CHECK(second.year == 2019);
    CHECK(second.casualties == 0);
    CHECK(second.weapon_type == clean::WeaponKind::Rifle);
}

TEST_CASE("split_era boundaries and partition") {
    const auto all = clean::build_analysis_table(tiny_join()).records;
    auto pre = clean::split_era(all, clean::Era::Pre2018);
    auto post = clean::split_era(all, clean::Era::Post2018);
    auto identity = clean::split_era(all, clean::Era::All);
    CHECK(pre.size() == 1);
    CHECK(pre[0].year == 2016);
    CHECK(post.size() == 1);
    CHECK(post[0].year == 2019);
    CHECK(identity.size() == all.size());
    CHECK(pre.size() + post.size() == all.size());

    clean::AnalysisRecord r2017;
    r2017.year = 2017;
    clean::AnalysisRecord r2018;
    r2018.year = 2018;
    const std::vector<clean::AnalysisRecord> edge = {r2017, r2018};
    CHECK(clean::split_era(edge, clean::Era::Pre2018).size() == 1);
    CHECK(clean::split_era(edge, clean::Era::Pre2018)[0].year == 2017);
    CHECK(clean::split_era(edge, clean::Era::Post2018)[0].year == 2018);
}

TEST_CASE("analysis csv round-trips bit-exactly and is idempotent") {
    const auto records = clean::build_analysis_table(tiny_join()).records;
    const std::string csv1 = clean::write_analysis_csv(records);
    const auto reread = clean::read_analysis_csv(csv1);
    const std::string csv2 = clean::write_analysis_csv(reread);
    CHECK(csv1 == csv2);
    REQUIRE(reread.size() == records.size());
    CHECK(reread[0].shooter_age == records[0].shooter_age);
    CHECK(reread[0].weapon_type == records[0].weapon_type);
}

TEST_CASE("imputed ages stay inside the bounds of their inputs") {
    // mean of per-shooter imputations lies within [min, max] of those values
    clean::AgeImputationPolicy policy{17.0, 9.0, 16.0, 25.0};
    const std::vector<std::vector<std::string>> incidents = {
        {"14", "20"}, {"teen", "30"}, {"", "child"}, {"40"}, {"adult", "adult", "12"}};
    for (const auto& ages : incidents) {
        double lo = 1e9, hi = -1e9, sum = 0.0;
        for (const auto& raw : ages) {
            const double v = clean::impute_age(raw, policy).years;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        const double mean = sum / static_cast<double>(ages.size());
        CHECK(mean >= lo);
        CHECK(mean <= hi);
        CHECK(mean >= 3.0);
        CHECK(mean <= 100.0);
    }
}
