#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace modehunt::cli {

/// Malformed input; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a series from text: a JSON array, or CSV with one value per line or
/// (t,value) pairs on the grid t = i/n, with an optional header line.
std::vector<double> parse_series(const std::string& text);

/// Reads a file, or standard input for "-", and parses it.
std::vector<double> read_series(const std::string& path);

}  // namespace modehunt::cli
