// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gfa {

// Error taxonomy, mapped to CLI exit codes:
//   config_error   -> 1 (bad usage, bad config values)
//   data_error     -> 2 (unparseable or inconsistent input data)
//   internal_error -> 3 (broken invariant; indicates a bug upstream)
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class config_error : public error {
public:
    using error::error;
};

class data_error : public error {
public:
    using error::error;
};

// Parse failures carry "file:line:" context in the message.
class parse_error : public data_error {
public:
    using data_error::data_error;
};

// Binary container violations (bad magic, truncation, nonzero padding).
class format_error : public data_error {
public:
    using data_error::data_error;
};

class internal_error : public error {
public:
    using error::error;
};

} // namespace gfa
