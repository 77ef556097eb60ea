#include "isq/rng.hpp"

#include <string>

namespace isq {

namespace {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double to_open_unit(std::uint64_t bits) {
    // 53-bit mantissa; result lies in [0, 1). Zero is mapped to the
    // smallest interior value so ln(u) stays finite.
    double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    if (u <= 0.0) return 0x1.0p-53;
    return u;
}

} // namespace

UniformStream::UniformStream(std::int64_t seed, std::uint64_t salt)
    : seed_(seed), salt_(salt) {
    if (seed <= 0) {
        throw ConfigError("stream seed must be a positive integer, got " +
                          std::to_string(seed));
    }
    key_ = mix64(mix64(static_cast<std::uint64_t>(seed)) ^
                 mix64(salt ^ 0xA5A5A5A5A5A5A5A5ULL));
}

double UniformStream::at(std::uint64_t index) const {
    return to_open_unit(mix64(key_ ^ (index * 0xD1B54A32D192ED03ULL)));
}

double UniformStream::next() {
    return at(cursor_++);
}

UniformStream create_stream(std::int64_t seed, std::uint64_t salt) {
    return UniformStream(seed, salt);
}

UniformStream SeedPlan::stream(Role role, std::uint64_t replication) const {
    std::int64_t seed = 0;
    switch (role) {
        case Role::E: seed = e_seed; break;
        case Role::F:
            if (!f_seed) throw ConfigError("arrival law needs seed F but none was given");
            seed = *f_seed;
            break;
        case Role::G: seed = g_seed; break;
        case Role::H:
            if (!h_seed) throw ConfigError("service law needs seed H but none was given");
            seed = *h_seed;
            break;
    }
    return create_stream(seed, role_salt(role, replication));
}

} // namespace isq
