#pragma once

#include <stdexcept>
#include <string>

namespace capkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector lengths or schema shapes disagree.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A valuation map is not total over the set it is applied to.
class ValuationError : public Error {
public:
    using Error::Error;
};

/// An interaction delta references something that does not exist.
class DeltaError : public Error {
public:
    using Error::Error;
};

/// An interaction record declares a mechanism without the data it needs.
class IncompleteRecordError : public Error {
public:
    using Error::Error;
};

class TraceError : public Error {
public:
    using Error::Error;
};

/// Exact arithmetic left the representable range, or a literal is malformed.
class ArithmeticError : public Error {
public:
    using Error::Error;
};

} // namespace capkit
