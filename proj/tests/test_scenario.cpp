#include <catch2/catch_amalgamated.hpp>

#include "jamsim/scenario.hpp"

using namespace jamsim;

namespace {
ScenarioConfig defaults() { return ScenarioConfig{}; }
}

TEST_CASE("NS path starts at the north arm end and hits the origin at midpoint") {
    const ScenarioConfig cfg = defaults();
    const Vec3 start = position_at(TrajectoryId::NS, 0, cfg);
    REQUIRE(start.x == 0.0);
    REQUIRE_THAT(start.y, Catch::Matchers::WithinAbs(cfg.arm_length_m, 1e-12));
    const Vec3 mid = position_at(TrajectoryId::NS, cfg.collections / 2, cfg);
    REQUIRE_THAT(norm(mid), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("every trajectory passes the origin at the midpoint collection") {
    const ScenarioConfig cfg = defaults();
    for (TrajectoryId traj : kAllTrajectories)
        REQUIRE(norm(position_at(traj, cfg.collections / 2, cfg)) < 1e-12);
}

TEST_CASE("WN path positions match a brute-force arc-length walk") {
    const ScenarioConfig cfg = defaults();
    for (std::size_t t = 0; t < cfg.collections; ++t) {
        const double s = cfg.speed_mps * cfg.collection_interval_s * static_cast<double>(t);
        Vec3 expect;
        if (s <= cfg.arm_length_m)
            expect = {-(cfg.arm_length_m - s), 0.0, 0.0};  // west arm, inbound
        else
            expect = {0.0, s - cfg.arm_length_m, 0.0};     // north arm, outbound
        const Vec3 got = position_at(TrajectoryId::WN, t, cfg);
        REQUIRE_THAT(got.x, Catch::Matchers::WithinAbs(expect.x, 1e-9));
        REQUIRE_THAT(got.y, Catch::Matchers::WithinAbs(expect.y, 1e-9));
    }
}

TEST_CASE("consecutive positions advance by exactly speed*interval, except at the turn") {
    const ScenarioConfig cfg = defaults();
    const double step = cfg.speed_mps * cfg.collection_interval_s;
    const std::size_t turn = cfg.collections / 2;
    for (TrajectoryId traj : kAllTrajectories) {
        for (std::size_t t = 0; t + 1 < cfg.collections; ++t) {
            if (t + 1 == turn || t == turn) continue;  // chord shortens through the corner
            const Vec3 d = position_at(traj, t + 1, cfg) - position_at(traj, t, cfg);
            REQUIRE_THAT(norm(d), Catch::Matchers::WithinAbs(step, 1e-9));
        }
    }
}

TEST_CASE("position_at rejects out-of-range collection indices") {
    const ScenarioConfig cfg = defaults();
    REQUIRE_THROWS_AS(position_at(TrajectoryId::NS, cfg.collections, cfg), ValidationError);
}

TEST_CASE("world_at zenith: jammer right above the receiver at the midpoint") {
    ScenarioConfig cfg = defaults();
    cfg.rx_trajectory = TrajectoryId::NS;
    cfg.jammer_trajectory = TrajectoryId::WN;
    const WorldState w = world_at(cfg, cfg.collections / 2);
    // both vehicles sit at the intersection; the van antenna rides 1 m higher
    REQUIRE_THAT(w.true_jam_doa.elevation_deg, Catch::Matchers::WithinAbs(90.0, 1e-9));
    REQUIRE_THAT(w.true_jam_doa.azimuth_deg, Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("world_at boresight: source due +y at array height gives (0, 0)") {
    ScenarioConfig cfg = defaults();
    cfg.tx_position = {0.0, 100.0, kRxAntennaHeightM};
    cfg.rx_trajectory = TrajectoryId::NS;
    const WorldState w = world_at(cfg, cfg.collections / 2);  // rx at origin
    REQUIRE_THAT(w.true_src_doa.azimuth_deg, Catch::Matchers::WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(w.true_src_doa.elevation_deg, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("ground-truth DoAs round-trip through the steering convention") {
    const ScenarioConfig cfg = defaults();
    for (TrajectoryId rx : kAllTrajectories) {
        ScenarioConfig c = cfg;
        c.rx_trajectory = rx;
        c.jammer_trajectory = default_jammer_trajectory(rx);
        for (std::size_t t = 0; t < c.collections; t += 7) {
            const WorldState w = world_at(c, t);
            const Vec3 v = c.tx_position - w.rx_position;
            const Vec3 u = direction_unit_vector(w.true_src_doa);
            const double n = norm(v);
            REQUIRE(std::abs(u.x - v.x / n) < 1e-9);
            REQUIRE(std::abs(u.y - v.y / n) < 1e-9);
            REQUIRE(std::abs(u.z - v.z / n) < 1e-9);
        }
    }
}

TEST_CASE("default jammer pairing never shares the receiver's start arm") {
    for (TrajectoryId rx : kAllTrajectories) {
        const TrajectoryId jam = default_jammer_trajectory(rx);
        REQUIRE(trajectory_name(rx)[0] != trajectory_name(jam)[0]);
    }
}

TEST_CASE("degenerate geometry: source at the array center is rejected") {
    ScenarioConfig cfg = defaults();
    cfg.tx_position = Vec3{0.0, cfg.arm_length_m, kRxAntennaHeightM};  // rx start position
    cfg.rx_trajectory = TrajectoryId::NS;
    REQUIRE_THROWS_AS(world_at(cfg, 0), ValidationError);
}

TEST_CASE("training sequences stay inside the scan range") {
    const ScenarioConfig cfg = defaults();
    for (TrajectoryId traj : kAllTrajectories) {
        const auto seq = ground_truth_azimuth_sequence(traj, cfg, 20.0, 0.5);
        REQUIRE(seq.size() >= 50);
        for (double az : seq) {
            REQUIRE(az >= -90.0);
            REQUIRE(az <= 90.0);
        }
    }
}
