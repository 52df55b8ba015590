#ifndef SUMBOUNDS_ERRORS_HPP
#define SUMBOUNDS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumbounds {

// Result magnitude exceeded the largest finite value of the target format.
// `step` is the 1-based summation step when raised from a summation loop,
// 0 when raised from a single scalar operation.
class fp_overflow_error : public std::runtime_error {
public:
    explicit fp_overflow_error(std::size_t step = 0)
        : std::runtime_error(step == 0
                                 ? std::string("target-format overflow")
                                 : "target-format overflow at step " + std::to_string(step)),
          step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

class invalid_input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Relative quantities are undefined when the exact sum is zero.
class zero_sum_error : public std::runtime_error {
public:
    zero_sum_error() : std::runtime_error("exact sum is zero; relative error undefined") {}
};

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sumbounds

#endif
