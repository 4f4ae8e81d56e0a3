#ifndef QLE_ERRORS_HPP
#define QLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qle {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller-supplied value violated a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotHermitian : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidDensityMatrix : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Hermitian eigensolver hit its sweep cap.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class DimensionCapExceeded : public Error {
public:
    using Error::Error;
};

// Every live hypothesis assigns (numerically) zero probability to an outcome.
class DegenerateEvidence : public Error {
public:
    using Error::Error;
};

class PghFailure : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qle

#endif // QLE_ERRORS_HPP
