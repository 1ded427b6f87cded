#pragma once

#include <array>
#include <cstdint>

namespace hdalpha {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// The engine is xoshiro256++ whose state is derived from the key with
/// SplitMix64, so replication r of a study can always be handed
/// RngStream(seed, r) regardless of which thread runs it. All samplers are
/// implemented here (no <random> distributions) so sequences do not depend on
/// the standard library vendor.
///
/// A stream is a value type; copies continue independently from the same point.
/// Never share one instance across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Child stream that depends only on (seed, stream_id, tag), not on how many
    /// draws this stream has made.
    RngStream substream(std::uint64_t tag) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, bound), bound > 0, without modulo bias.
    std::uint64_t uniform_index(std::uint64_t bound);
    double normal();
    /// Raw (unit-scale) Student t draw.
    double student_t(int df);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Well-mixed 64-bit seed for the index-th member of a family rooted at `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

double sample_normal(RngStream& stream);
double sample_student_t(RngStream& stream, int df = 3);

}  // namespace hdalpha
