#pragma once

// Error taxonomy for the toolkit. Every failure the library can signal maps
// to one of three categories, which the CLI translates into exit codes:
// parse errors (2), infeasibility (3), numerical failures (4).

#include <stdexcept>
#include <string>

namespace hyperfilt {

class Error : public std::runtime_error {
public:
    enum class Category { parse = 2, infeasible = 3, numerical = 4 };

    Error(Category cat, const std::string& what) : std::runtime_error(what), cat_(cat) {}

    Category category() const noexcept { return cat_; }
    int exit_code() const noexcept { return static_cast<int>(cat_); }

private:
    Category cat_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(Category::parse, what) {}
};

struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& what) : Error(Category::infeasible, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(Category::numerical, what) {}
};

/// Element is a zero divisor or numerically singular; carries the norm value.
struct NearZeroNorm : NumericalError {
    double norm_value;
    explicit NearZeroNorm(double n)
        : NumericalError("element norm " + std::to_string(n) + " is below the singularity tolerance"),
          norm_value(n) {}
};

/// Idempotent search exhausted its start budget without a verified map.
struct NoIsomorphismFound : NumericalError {
    explicit NoIsomorphismFound(const std::string& what) : NumericalError(what) {}
};

/// Denominator system has no real solution reachable from the start lattice.
struct NoRealSolution : InfeasibleError {
    double best_residual;
    explicit NoRealSolution(double residual)
        : InfeasibleError("no real denominator solution found; best residual " +
                          std::to_string(residual)),
          best_residual(residual) {}
};

/// The numerator linear system is rank deficient for this C.
struct SingularSystem : NumericalError {
    double condition_estimate;
    explicit SingularSystem(double cond)
        : NumericalError("numerator system is singular (pivot ratio " + std::to_string(cond) + ")"),
          condition_estimate(cond) {}
};

/// Round trip of a freshly converted filter failed to reproduce the target.
struct ConversionFailed : NumericalError {
    explicit ConversionFailed(double residual)
        : NumericalError("round-trip residual " + std::to_string(residual) +
                         " exceeds the conversion tolerance") {}
};

struct PoleAtFrequency : NumericalError {
    double omega;
    explicit PoleAtFrequency(double w)
        : NumericalError("transfer function has a pole at omega = " + std::to_string(w)), omega(w) {}
};

/// |H| fell below tolerance; relative sensitivity is undefined here.
struct MagnitudeUnderflow : NumericalError {
    double omega;
    explicit MagnitudeUnderflow(double w)
        : NumericalError("|H| underflow at omega = " + std::to_string(w) +
                         "; sensitivity undefined"),
          omega(w) {}
};

struct DivisionByZeroSensitivity : NumericalError {
    double omega;
    explicit DivisionByZeroSensitivity(double w)
        : NumericalError("reference sensitivity is zero at omega = " + std::to_string(w)), omega(w) {}
};

struct AllPointsInfeasible : InfeasibleError {
    explicit AllPointsInfeasible(const std::string& what) : InfeasibleError(what) {}
};

struct StalledAtInfeasible : InfeasibleError {
    explicit StalledAtInfeasible(const std::string& what) : InfeasibleError(what) {}
};

}  // namespace hyperfilt
