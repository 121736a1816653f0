#pragma once

#include <stdexcept>
#include <string>

namespace hopse {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A containment pair violates rank monotonicity.
class OrderViolation : public Error {
public:
    using Error::Error;
};

/// The same (vertex set, rank) pair was supplied twice.
class DuplicateCell : public Error {
public:
    using Error::Error;
};

/// An exhaustive search exceeded its size cap.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// A cell's rank does not match the rank a neighborhood query expects.
class RankMismatch : public Error {
public:
    using Error::Error;
};

/// Unknown taxonomy set name.
class UnknownSet : public Error {
public:
    using Error::Error;
};

/// A count does not fit the requested fixed-width integer.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Encoding requested on a graph with no nodes.
class EmptyGraph : public Error {
public:
    using Error::Error;
};

/// Encodings with mixed channels passed to a single-channel aggregation.
class ChannelMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix dimensions incompatible with the operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Training loss became non-finite.
class Diverged : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace hopse
