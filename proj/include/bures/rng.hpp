#pragma once

#include <array>
#include <cstdint>

namespace bures {

/// Philox4x64-10 block function (Salmon et al., Random123). Pure: the same
/// (counter, key) always yields the same four words.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key) noexcept;

/*!
 * Reproducible random stream keyed by (seed, stream_index).
 *
 * The key of the Philox block cipher is (seed, stream_index) and the counter
 * walks 0, 1, 2, ... so streams with different indices are independent and
 * any stream can be recreated from its two integers alone. The stream object
 * is the only mutable piece; copy it to fork a replay.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

    std::uint64_t seed() const noexcept { return key_[0]; }
    std::uint64_t stream_index() const noexcept { return key_[1]; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept;

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal() noexcept;

private:
    std::array<std::uint64_t, 2> key_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buffer_{};
    unsigned buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace bures
