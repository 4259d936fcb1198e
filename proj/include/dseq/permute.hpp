#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dseq/errors.hpp"
#include "dseq/rng.hpp"

namespace dseq {

/// A factorization of a sequence length as block_size * block_count.
/// Whether the block count is even or odd drives much of the analysis.
struct BlockPartition {
    std::uint64_t sequence_length = 0;
    std::uint64_t block_size = 0;
    std::uint64_t block_count = 0;

    static BlockPartition of(std::uint64_t sequence_length, std::uint64_t block_size) {
        if (block_size == 0 || sequence_length == 0 || sequence_length % block_size != 0)
            throw config_error("block size " + std::to_string(block_size) +
                               " does not divide sequence length " + std::to_string(sequence_length));
        return BlockPartition{sequence_length, block_size, sequence_length / block_size};
    }

    bool even_block_count() const { return block_count % 2 == 0; }

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
};

/// All (block_size, block_count) factor pairs of sequence_length, ascending by block_size.
inline std::vector<BlockPartition> partitions_of(std::uint64_t sequence_length) {
    if (sequence_length < 1)
        throw config_error("partitions_of: length must be positive");
    std::vector<BlockPartition> out;
    for (std::uint64_t b = 1; b <= sequence_length; ++b) {
        if (sequence_length % b == 0)
            out.push_back(BlockPartition{sequence_length, b, sequence_length / b});
    }
    return out;
}

/// A permutation of positions 1..size. The convention, fixed by the letter
/// notation below, is: output position j takes the digit from source
/// position mapping[j]. Internally zero-based.
class Permutation {
public:
    static Permutation identity(std::size_t size) {
        Permutation p;
        p.map_.resize(size);
        std::iota(p.map_.begin(), p.map_.end(), 0u);
        return p;
    }

    /// Build from the external 1-based mapping; rejects anything not a bijection.
    static Permutation from_one_based(const std::vector<std::uint64_t>& mapping) {
        if (mapping.empty())
            throw config_error("permutation must not be empty");
        Permutation p;
        p.map_.reserve(mapping.size());
        std::vector<bool> seen(mapping.size(), false);
        for (std::uint64_t v : mapping) {
            if (v < 1 || v > mapping.size())
                throw config_error("permutation entry " + std::to_string(v) +
                                   " out of range 1.." + std::to_string(mapping.size()));
            if (seen[v - 1])
                throw config_error("permutation entry " + std::to_string(v) + " repeated");
            seen[v - 1] = true;
            p.map_.push_back(static_cast<std::uint32_t>(v - 1));
        }
        return p;
    }

    std::size_t size() const { return map_.size(); }

    /// Zero-based source position feeding output position j.
    std::uint32_t source_of(std::size_t j) const { return map_[j]; }

    std::vector<std::uint64_t> one_based() const {
        std::vector<std::uint64_t> out(map_.size());
        for (std::size_t j = 0; j < map_.size(); ++j) out[j] = map_[j] + 1;
        return out;
    }

    std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& block) const {
        if (block.size() != map_.size())
            throw config_error("permutation size " + std::to_string(map_.size()) +
                               " does not match block size " + std::to_string(block.size()));
        std::vector<std::uint8_t> out(block.size());
        apply_into(block, out);
        return out;
    }

    void apply_into(std::span<const std::uint8_t> block, std::span<std::uint8_t> out) const {
        for (std::size_t j = 0; j < map_.size(); ++j) out[j] = block[map_[j]];
    }

    Permutation inverse() const {
        Permutation inv;
        inv.map_.resize(map_.size());
        for (std::size_t j = 0; j < map_.size(); ++j) inv.map_[map_[j]] = static_cast<std::uint32_t>(j);
        return inv;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> map_;
};

/// Parse the compact letter notation: position labels a, b, c, ... stand for
/// source positions 1, 2, 3, ... and the string lists, in output order, which
/// source position each output digit comes from. "ba" swaps two digits.
/// The letters must be exactly the first size letters of the alphabet.
inline Permutation parse_letter_permutation(std::string_view text) {
    if (text.empty())
        throw parse_error("letter permutation is empty");
    if (text.size() > 26)
        throw parse_error("letter permutation longer than 26 positions");
    std::vector<std::uint64_t> mapping;
    mapping.reserve(text.size());
    bool seen[26] = {};
    for (char c : text) {
        if (c < 'a' || c > 'z')
            throw parse_error(std::string("invalid character '") + c + "' in letter permutation");
        const std::uint64_t pos = static_cast<std::uint64_t>(c - 'a') + 1;
        if (pos > text.size())
            throw parse_error(std::string("letter '") + c + "' is outside a.." +
                              static_cast<char>('a' + text.size() - 1));
        if (seen[c - 'a'])
            throw parse_error(std::string("duplicate letter '") + c + "' in permutation");
        seen[c - 'a'] = true;
        mapping.push_back(pos);
    }
    return Permutation::from_one_based(mapping);
}

/// Inverse of parse_letter_permutation. Only sizes up to 26 are representable;
/// larger permutations must use the numeric form.
inline std::string format_letter_permutation(const Permutation& perm) {
    if (perm.size() > 26)
        throw config_error("permutation of size " + std::to_string(perm.size()) +
                           " not representable in letter form (max 26); use numeric form");
    std::string out(perm.size(), '?');
    for (std::size_t j = 0; j < perm.size(); ++j)
        out[j] = static_cast<char>('a' + perm.source_of(j));
    return out;
}

/// Numeric external form: 1-based source positions, comma separated ("8,1,10,...").
inline Permutation parse_numeric_permutation(std::string_view text) {
    std::vector<std::uint64_t> mapping;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && text[j] != ',') ++j;
        std::string_view tok = text.substr(i, j - i);
        if (tok.empty())
            throw parse_error("numeric permutation: empty entry");
        std::uint64_t v = 0;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw parse_error(std::string("numeric permutation: invalid character '") + c + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        mapping.push_back(v);
        i = j + 1;
    }
    if (mapping.empty())
        throw parse_error("numeric permutation is empty");
    try {
        return Permutation::from_one_based(mapping);
    } catch (const config_error& e) {
        throw parse_error(std::string("numeric permutation: ") + e.what());
    }
}

inline std::string format_numeric_permutation(const Permutation& perm) {
    std::string out;
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(perm.source_of(j) + 1);
    }
    return out;
}

/// An ordered, non-empty list of equal-size permutations applied cyclically
/// to consecutive blocks: block k (1-based) gets member ((k-1) mod n) + 1.
class PermutationSchedule {
public:
    explicit PermutationSchedule(std::vector<Permutation> members) : members_(std::move(members)) {
        if (members_.empty())
            throw config_error("schedule must contain at least one permutation");
        for (const auto& m : members_) {
            if (m.size() != members_.front().size())
                throw config_error("schedule members disagree in size: " +
                                   std::to_string(members_.front().size()) + " vs " +
                                   std::to_string(m.size()));
        }
    }

    std::size_t length() const { return members_.size(); }
    std::size_t block_size() const { return members_.front().size(); }
    const std::vector<Permutation>& members() const { return members_; }

    /// Member applied to zero-based block index k.
    const Permutation& member_for_block(std::size_t k) const { return members_[k % members_.size()]; }

private:
    std::vector<Permutation> members_;
};

/// Apply a cyclic schedule of block permutations. Every digit stays inside
/// its own block, so per-block (and global) digit counts are preserved.
inline std::vector<std::uint8_t> apply_schedule(const std::vector<std::uint8_t>& bits,
                                                const BlockPartition& partition,
                                                const PermutationSchedule& schedule) {
    if (bits.size() != partition.sequence_length)
        throw config_error("sequence length " + std::to_string(bits.size()) +
                           " does not match partition length " +
                           std::to_string(partition.sequence_length));
    if (schedule.block_size() != partition.block_size)
        throw config_error("schedule member size " + std::to_string(schedule.block_size()) +
                           " does not match partition block size " +
                           std::to_string(partition.block_size));
    std::vector<std::uint8_t> out(bits.size());
    const std::size_t B = partition.block_size;
    for (std::uint64_t k = 0; k < partition.block_count; ++k) {
        const auto& perm = schedule.member_for_block(k);
        perm.apply_into(std::span<const std::uint8_t>(bits.data() + k * B, B),
                        std::span<std::uint8_t>(out.data() + k * B, B));
    }
    return out;
}

/// Uniform random permutation via Fisher-Yates driven by the engine's
/// rejection-sampled draws: for i = size-1 down to 1, swap positions i and
/// below(i+1) of the identity. Pinned exactly so any implementation of the
/// splitmix64 stream reproduces the same permutations.
inline Permutation random_permutation(std::size_t size, SplitMix64& engine) {
    if (size < 1)
        throw config_error("random_permutation: size must be positive");
    std::vector<std::uint64_t> mapping(size);
    std::iota(mapping.begin(), mapping.end(), 1u);
    for (std::size_t i = size - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(engine.below(i + 1));
        std::swap(mapping[i], mapping[j]);
    }
    return Permutation::from_one_based(mapping);
}

/// Draw an n-member schedule of equal-size permutations from one engine.
inline PermutationSchedule random_schedule(std::size_t n, std::size_t block_size, SplitMix64& engine) {
    std::vector<Permutation> members;
    members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) members.push_back(random_permutation(block_size, engine));
    return PermutationSchedule(std::move(members));
}

} // namespace dseq
