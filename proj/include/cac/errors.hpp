#ifndef CAC_ERRORS_HPP
#define CAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cac {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid scenario/class definition (violated invariant, bad range, bad ordering).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Bad argument to an operation (non-positive mean, allocation outside (0, beta_r], ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

// State index outside the chain's state space.
struct IndexError : Error {
    explicit IndexError(const std::string& msg) : Error(msg) {}
};

// A CellState that cannot hold its calls even at the degradation floors.
// Reaching this from admit/release indicates a CAC bug, not bad user input.
struct InfeasibleStateError : Error {
    explicit InfeasibleStateError(const std::string& msg) : Error(msg) {}
};

// Residual-capacity ratio requested with no non-real-time calls active.
struct UndefinedResidualError : Error {
    explicit UndefinedResidualError(const std::string& msg) : Error(msg) {}
};

// Fixed-point iteration hit its cap; carries the last iterate for diagnostics.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double last, double res)
        : Error(msg), last_iterate(last), residual(res) {}
    double last_iterate;
    double residual;
};

// Under/overflow in the stationary distribution beyond what stabilization handles.
struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Broken internal invariant (event queue, bookkeeping, conservation).
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

// p_block = 1 makes the per-admitted-call handover ratio undefined.
struct UndefinedRatioError : Error {
    explicit UndefinedRatioError(const std::string& msg) : Error(msg) {}
};

}  // namespace cac

#endif
