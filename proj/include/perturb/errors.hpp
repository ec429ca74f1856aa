#pragma once

#include <stdexcept>
#include <string>

namespace perturb {

// An exact solver was asked for an instance above its size cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A constructive step could not reach its target (e.g. a long-cycle search).
class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace perturb
