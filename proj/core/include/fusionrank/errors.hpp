#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fusionrank {

/// Base class for every error raised by the library on bad input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedRecord : public DataError {
public:
    MalformedRecord(std::size_t line, const std::string& reason)
        : DataError("line " + std::to_string(line) + ": " + reason), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DanglingReference : public DataError {
public:
    explicit DanglingReference(std::string id)
        : DataError("dangling reference: " + id), id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class DuplicateId : public DataError {
public:
    explicit DuplicateId(std::string id)
        : DataError("duplicate id: " + id), id_(std::move(id)) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class InvalidCorpus : public DataError {
public:
    using DataError::DataError;
};

class InvalidProfile : public DataError {
public:
    using DataError::DataError;
};

class UnknownRelationKind : public DataError {
public:
    using DataError::DataError;
};

class EmptyQuery : public DataError {
public:
    using DataError::DataError;
};

class InvalidSpec : public DataError {
public:
    using DataError::DataError;
};

class InvalidExperiment : public DataError {
public:
    using DataError::DataError;
};

} // namespace fusionrank
