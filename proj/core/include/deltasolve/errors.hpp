#pragma once

#include <stdexcept>
#include <string>

namespace deltasolve {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

// Gamma(z) failed the invertibility gate (condition number above the cap).
class SingularGamma : public Error {
public:
    SingularGamma(const std::string& what, double condition) : Error(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

// Evaluation point within kCoincidenceRadius of center `index`.
class CenterCoincidence : public Error {
public:
    CenterCoincidence(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const { return index_; }

private:
    int index_;
};

// Two consecutive rungs of the cutoff ladder disagreed by more than tol.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double t, double M, double discrepancy)
        : Error(what), t_(t), M_(M), discrepancy_(discrepancy) {}
    double time() const { return t_; }
    double cutoff() const { return M_; }
    double discrepancy() const { return discrepancy_; }

private:
    double t_;
    double M_;
    double discrepancy_;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

}  // namespace deltasolve
