#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gaitbench/cycle.hpp"
#include "gaitbench/preprocess_types.hpp"

namespace gaitbench {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON Lines, one cycle per line, full precision, deterministic key order.
void write_dataset(std::ostream& out, const Dataset& d);
void write_dataset_file(const std::string& path, const Dataset& d);

Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);

// Same wire format with arbitrary-length channel arrays.
std::vector<RawCycle> read_raw_cycles(std::istream& in);
std::vector<RawCycle> read_raw_cycles_file(const std::string& path);

}  // namespace gaitbench
