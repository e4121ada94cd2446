#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace idealcount {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph construction / validation -------------------------------------------

class CycleDetected : public Error {
public:
    std::vector<std::string> cycle;  // one offending cycle, in edge direction

    CycleDetected(const std::string& msg, std::vector<std::string> cycle_vertices)
        : Error(msg), cycle(std::move(cycle_vertices)) {}
};

class UnknownEndpoint : public Error {
public:
    using Error::Error;
};

class DuplicateEdge : public Error {
public:
    using Error::Error;
};

class SelfLoop : public Error {
public:
    using Error::Error;
};

class UnknownVertex : public Error {
public:
    using Error::Error;
};

// Counting -------------------------------------------------------------------

class NotATree : public Error {
public:
    using Error::Error;
};

class NotAForest : public Error {
public:
    using Error::Error;
};

class NotBranching : public Error {
public:
    using Error::Error;
};

// Pivot selection --------------------------------------------------------------

class NoMultiParentVertex : public Error {
public:
    using Error::Error;
};

class EmptyGraph : public Error {
public:
    using Error::Error;
};

// Oracle / generator -----------------------------------------------------------

class TooLarge : public Error {
public:
    using Error::Error;
};

class InvalidSize : public Error {
public:
    using Error::Error;
};

// Parsers ------------------------------------------------------------------------

class MalformedStanza : public Error {
public:
    std::size_t line;
    MalformedStanza(const std::string& msg, std::size_t line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
};

class MalformedRow : public Error {
public:
    std::size_t line;
    MalformedRow(const std::string& msg, std::size_t line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
};

class MalformedInput : public Error {
public:
    std::size_t line;
    MalformedInput(const std::string& msg, std::size_t line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
};

// Benchmark ------------------------------------------------------------------------

class CountMismatch : public Error {
public:
    std::string graph_edge_list;  // offending graph, serialized
    CountMismatch(const std::string& msg, std::string edge_list)
        : Error(msg), graph_edge_list(std::move(edge_list)) {}
};

// Engine-internal: a configured deadline expired.  Callers that set deadlines
// catch this and report a timeout instead of a count.
class DeadlineExpired : public Error {
public:
    DeadlineExpired() : Error("count aborted: deadline expired") {}
};

}  // namespace idealcount
