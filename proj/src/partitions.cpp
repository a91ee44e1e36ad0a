#include "rproj/partitions.hpp"

#include <algorithm>
#include <stdexcept>

namespace rproj {

Partition::Partition(std::vector<unsigned> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) {
            throw std::invalid_argument("partition parts must be positive");
        }
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw std::invalid_argument("partition parts must be non-increasing");
        }
        total_ += parts_[i];
    }
}

std::map<unsigned, unsigned> Partition::frequencies() const
{
    std::map<unsigned, unsigned> out;
    for (unsigned p : parts_) {
        ++out[p];
    }
    return out;
}

namespace {

void descend(unsigned remaining, unsigned largest, unsigned min_part, std::size_t max_length,
             std::vector<unsigned>& prefix,
             const std::function<void(const Partition&)>& visit)
{
    if (remaining == 0) {
        visit(Partition(prefix));
        return;
    }
    if (prefix.size() == max_length) {
        return;
    }
    for (unsigned part = std::min(remaining, largest); part >= min_part; --part) {
        const unsigned rest = remaining - part;
        // A non-empty remainder smaller than min_part can never be completed.
        if (rest != 0 && rest < min_part) {
            continue;
        }
        prefix.push_back(part);
        descend(rest, part, min_part, max_length, prefix, visit);
        prefix.pop_back();
    }
}

}  // namespace

void for_each_partition(unsigned n, unsigned min_part, std::size_t max_length,
                        const std::function<void(const Partition&)>& visit)
{
    if (min_part == 0) {
        min_part = 1;
    }
    std::vector<unsigned> prefix;
    descend(n, n, min_part, max_length, prefix, visit);
}

std::vector<Partition> partitions(unsigned n, unsigned min_part, std::size_t max_length)
{
    std::vector<Partition> out;
    for_each_partition(n, min_part, max_length,
                       [&](const Partition& p) { out.push_back(p); });
    return out;
}

}  // namespace rproj
