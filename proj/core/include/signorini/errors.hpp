#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signorini {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct InvalidRadius : Error { using Error::Error; };
struct DegenerateCenter : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct NoFreeBoundary : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

/// Non-finite value produced while sampling a closed form; carries the
/// offending node.
struct SamplingError : Error {
    std::size_t node_index;
    SamplingError(const std::string& what, std::size_t node)
        : Error(what), node_index(node) {}
};

}  // namespace signorini
