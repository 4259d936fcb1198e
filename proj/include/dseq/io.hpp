#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dseq/errors.hpp"
#include "dseq/permute.hpp"

namespace dseq {

// ---------------------------------------------------------------------------
// Sequence files
//
//   # dseq p=13 period=12
//   000100111011
//
// One header line, then '0'/'1' characters in lines of at most 80, each
// newline-terminated. Nothing else is permitted. p=0 marks a sequence that
// did not come from a prime reciprocal (hand-written blocks, RNG output).
// ---------------------------------------------------------------------------

struct SequenceFile {
    std::uint64_t prime = 0; // 0 = not derived from a prime
    std::vector<std::uint8_t> bits;
};

inline std::string render_sequence_file(std::uint64_t prime, const std::vector<std::uint8_t>& bits) {
    std::string out = "# dseq p=" + std::to_string(prime) + " period=" + std::to_string(bits.size()) + "\n";
    for (std::size_t i = 0; i < bits.size(); i += 80) {
        const std::size_t end = std::min(bits.size(), i + 80);
        for (std::size_t j = i; j < end; ++j) out += static_cast<char>('0' + bits[j]);
        out += '\n';
    }
    return out;
}

inline void write_sequence_file(const std::filesystem::path& path, std::uint64_t prime,
                                const std::vector<std::uint8_t>& bits) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open for writing: " + path.string());
    f << render_sequence_file(prime, bits);
    if (!f) throw env_error("write failed: " + path.string());
}

inline SequenceFile parse_sequence_text(std::string_view text, const std::string& origin) {
    SequenceFile out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::uint64_t declared_period = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            throw parse_error(origin + ": line " + std::to_string(line_no + 1) +
                              ": missing trailing newline");
        const std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;
        if (!saw_header) {
            std::string_view h = line;
            auto fail = [&origin]() -> void {
                throw parse_error(origin + ": line 1: expected header '# dseq p=<prime> period=<n>'");
            };
            auto eat = [&](std::string_view prefix) {
                if (h.substr(0, prefix.size()) != prefix) fail();
                h.remove_prefix(prefix.size());
            };
            auto number = [&]() {
                std::size_t i = 0;
                std::uint64_t v = 0;
                while (i < h.size() && h[i] >= '0' && h[i] <= '9') v = v * 10 + (h[i++] - '0');
                if (i == 0) fail();
                h.remove_prefix(i);
                return v;
            };
            eat("# dseq p=");
            out.prime = number();
            eat(" period=");
            declared_period = number();
            if (!h.empty()) fail();
            saw_header = true;
            continue;
        }
        if (line.empty())
            throw parse_error(origin + ": line " + std::to_string(line_no) + ": empty line");
        if (line.size() > 80)
            throw parse_error(origin + ": line " + std::to_string(line_no) + ": line longer than 80 characters");
        for (char c : line) {
            if (c != '0' && c != '1')
                throw parse_error(origin + ": line " + std::to_string(line_no) +
                                  ": invalid character '" + std::string(1, c) + "'");
            out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    }
    if (!saw_header)
        throw parse_error(origin + ": empty file");
    if (out.bits.size() != declared_period)
        throw parse_error(origin + ": line " + std::to_string(line_no) + ": header declares period " +
                          std::to_string(declared_period) + " but file holds " +
                          std::to_string(out.bits.size()) + " digits");
    return out;
}

inline SequenceFile read_sequence_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_sequence_text(ss.str(), path.filename().string());
}

// ---------------------------------------------------------------------------
// Permutation / schedule files
//
// One permutation per line, letter form ("hajbl...") or numeric form
// ("8,1,10,..."); '#' lines are comments, blank lines are ignored. A schedule
// is the ordered list of all permutation lines in the file.
// ---------------------------------------------------------------------------

inline Permutation parse_permutation_line(std::string_view line) {
    if (line.find(',') != std::string_view::npos ||
        (!line.empty() && line.front() >= '0' && line.front() <= '9'))
        return parse_numeric_permutation(line);
    return parse_letter_permutation(line);
}

inline std::vector<Permutation> parse_schedule_text(std::string_view text, const std::string& origin) {
    std::vector<Permutation> perms;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        try {
            perms.push_back(parse_permutation_line(line));
        } catch (const parse_error& e) {
            throw parse_error(origin + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return perms;
}

inline std::vector<Permutation> read_schedule_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_schedule_text(ss.str(), path.filename().string());
}

inline void write_schedule_file(const std::filesystem::path& path, const PermutationSchedule& schedule,
                                const std::string& comment) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open for writing: " + path.string());
    if (!comment.empty()) f << "# " << comment << "\n";
    for (const auto& perm : schedule.members()) f << format_numeric_permutation(perm) << "\n";
    if (!f) throw env_error("write failed: " + path.string());
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open for writing: " + path.string());
    f << content;
    if (!f) throw env_error("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw env_error("cannot open: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace dseq
