#pragma once

#include <functional>
#include <map>
#include <vector>

namespace rproj {

/// Integer partition with parts in non-increasing order.
class Partition {
public:
    explicit Partition(std::vector<unsigned> parts);

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned total() const { return total_; }
    std::size_t length() const { return parts_.size(); }

    /// part -> multiplicity
    std::map<unsigned, unsigned> frequencies() const;

private:
    std::vector<unsigned> parts_;
    unsigned total_ = 0;
};

/// Visits every partition of `n` with parts >= `min_part` and at most
/// `max_length` parts, in descending lexicographic order.
void for_each_partition(unsigned n, unsigned min_part, std::size_t max_length,
                        const std::function<void(const Partition&)>& visit);

std::vector<Partition> partitions(unsigned n, unsigned min_part = 1,
                                  std::size_t max_length = static_cast<std::size_t>(-1));

}  // namespace rproj
