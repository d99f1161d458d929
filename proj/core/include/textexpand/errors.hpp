#pragma once

#include <stdexcept>
#include <string>

namespace textexpand {

/// Degenerate geometry: too few vertices, zero area, collinear spikes.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed annotation or config content. Message names the line or path.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed binary payload or filesystem failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace textexpand
