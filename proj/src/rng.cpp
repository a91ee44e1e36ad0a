#include "rproj/rng.hpp"

namespace rproj {

namespace {

constexpr std::uint64_t kMultiplier0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMultiplier1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo)
{
    const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(product >> 64);
    lo = static_cast<std::uint64_t>(product);
}

}  // namespace

Philox4x64::Counter Philox4x64::block(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMultiplier0, ctr[0], hi0, lo0);
        mulhilo(kMultiplier1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t CounterStream::word(std::uint64_t index) const
{
    const auto out = Philox4x64::block({index / 4, 0, stream_, 0}, {seed_, 0});
    return out[index % 4];
}

StreamCursor::StreamCursor(const CounterStream& stream, std::uint64_t start)
    : stream_(stream), index_(start)
{
}

void StreamCursor::seek(std::uint64_t index) { index_ = index; }

void StreamCursor::refill()
{
    block_index_ = index_ / 4;
    block_ = Philox4x64::block({block_index_, 0, stream_.stream(), 0}, {stream_.seed(), 0});
}

std::uint64_t StreamCursor::next()
{
    if (index_ / 4 != block_index_) {
        refill();
    }
    return block_[index_++ % 4];
}

}  // namespace rproj
