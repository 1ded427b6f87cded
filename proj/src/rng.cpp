#include "hdalpha/rng.hpp"

#include <bit>
#include <cmath>

#include "hdalpha/errors.hpp"

namespace hdalpha {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t combine_key(std::uint64_t seed, std::uint64_t stream_id) {
    return splitmix_finalize(splitmix_finalize(seed + kGolden) ^ (stream_id * 0xD1B54A32D192ED03ULL + kGolden));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = combine_key(seed, stream_id);
    for (auto& word : state_) {
        x += kGolden;
        word = splitmix_finalize(x);
    }
}

RngStream RngStream::substream(std::uint64_t tag) const { return RngStream(combine_key(seed_, stream_id_), tag); }

std::uint64_t RngStream::next_u64() {
    auto& s = state_;
    const std::uint64_t result = std::rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
    // Reject the lowest 2^64 mod bound values so the remainder is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next_u64();
    while (x < threshold) x = next_u64();
    return x % bound;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

double RngStream::student_t(int df) {
    if (df < 1) throw Error(ErrorCode::InvalidArgument, "student t degrees of freedom must be >= 1");
    const double z = normal();
    double chi2 = 0.0;
    for (int k = 0; k < df; ++k) {
        const double g = normal();
        chi2 += g * g;
    }
    return z / std::sqrt(chi2 / df);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return combine_key(seed, index); }

double sample_normal(RngStream& stream) { return stream.normal(); }

double sample_student_t(RngStream& stream, int df) { return stream.student_t(df); }

}  // namespace hdalpha
