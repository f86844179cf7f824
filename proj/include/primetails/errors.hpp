#pragma once

#include <stdexcept>
#include <string>

namespace primetails {

/// Parameter outside its mathematical domain (bad base, target out of the
/// admissible range, ...). The CLI maps this to exit code 1.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured cap was exceeded or a buffer could not be allocated.
/// The CLI maps this to exit code 2.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace primetails
