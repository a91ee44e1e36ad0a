#pragma once

#include <array>
#include <cstdint>

namespace rproj {

/// Philox4x64-10 block function (Salmon et al., Random123).
struct Philox4x64 {
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    static Counter block(Counter counter, Key key);
};

/// Counter-based random stream.
///
/// Word `i` of stream `s` under seed `seed` is word i % 4 of
/// Philox4x64-10(counter = {i / 4, 0, s, 0}, key = {seed, 0}). Streams never
/// overlap, so substreams can be handed to workers in any order and every
/// word stays a pure function of (seed, stream, index).
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint64_t word(std::uint64_t index) const;

    /// Uniform double in [0, 1) from the top 53 bits of word(index).
    double uniform(std::uint64_t index) const { return to_unit(word(index)); }

    static double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1p-53; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

/// Sequential reader over a CounterStream that keeps the current block.
class StreamCursor {
public:
    StreamCursor(const CounterStream& stream, std::uint64_t start = 0);

    void seek(std::uint64_t index);
    std::uint64_t next();

private:
    void refill();

    CounterStream stream_;
    std::uint64_t index_;
    std::uint64_t block_index_ = ~std::uint64_t{0};
    Philox4x64::Counter block_{};
};

}  // namespace rproj
