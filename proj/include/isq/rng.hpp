#pragma once

#include <cstdint>
#include <optional>

#include "isq/errors.hpp"

namespace isq {

// Counter-mode uniform(0,1) stream. The n-th draw is a pure function of
// (seed, salt, n), so a stream can be recreated and replayed on any
// platform. Values are always strictly inside (0,1) so that ln(u) stays
// finite in the inverse-transform samplers.
class UniformStream {
public:
    UniformStream(std::int64_t seed, std::uint64_t salt);

    // Emits the next uniform and advances the cursor.
    double next();

    std::int64_t seed() const { return seed_; }
    std::uint64_t salt() const { return salt_; }
    std::uint64_t cursor() const { return cursor_; }

    // Value at an arbitrary draw index, without touching the cursor.
    double at(std::uint64_t index) const;

private:
    std::int64_t seed_;
    std::uint64_t salt_;
    std::uint64_t key_;
    std::uint64_t cursor_ = 0;
};

// Rejects seed <= 0 with ConfigError.
UniformStream create_stream(std::int64_t seed, std::uint64_t salt);

// Named seeds for the four generator roles. E drives inter-arrivals,
// F the second Erlang arrival stage, G the service times and H the
// second Erlang service stage. F and H are only needed for Erlang laws.
struct SeedPlan {
    std::int64_t e_seed = 7528;
    std::optional<std::int64_t> f_seed;
    std::int64_t g_seed = 7552;
    std::optional<std::int64_t> h_seed;
    std::uint64_t master_salt = 0;

    enum class Role : std::uint64_t { E = 0, F = 1, G = 2, H = 3 };

    // Per-replication salt: replications get disjoint salt blocks so the
    // four role streams stay distinct within and across replications.
    std::uint64_t role_salt(Role role, std::uint64_t replication) const {
        return master_salt + replication * 16 + static_cast<std::uint64_t>(role);
    }

    UniformStream stream(Role role, std::uint64_t replication) const;
};

} // namespace isq
