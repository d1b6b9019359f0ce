#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace simadc {

// Shortest decimal form that round-trips to the same double; '.' decimal
// separator regardless of locale.
std::string num_str(double v);
std::string num_str(std::uint64_t v);
std::string num_str(int v);

// Comma-separated table with a fixed header, '\n' line endings, and values
// formatted by num_str. Cells must not contain commas, quotes, or newlines.
class Csv {
public:
    explicit Csv(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::string to_text() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Writes text to path atomically enough for our purposes (truncate +
// write + flush); throws IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

std::string read_text_file(const std::string& path);

// FNV-1a 64-bit content digest, as 16 hex characters.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace simadc
