#pragma once

#include <stdexcept>
#include <string>

namespace matchaug {

// Input failed structural validation (exit code 2 in the CLI).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// An exact solver refused the input instead of degrading.
class budget_exceeded : public std::runtime_error {
public:
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// A structural guarantee that holds for every well-structured instance was
// violated at run time. Carries a dump of the offending instance so the case
// can be reproduced (exit code 3 in the CLI).
class theorem_violation : public std::runtime_error {
public:
    theorem_violation(const std::string& what, std::string instance_dump = "")
        : std::runtime_error(what), instance_dump_(std::move(instance_dump)) {}

    const std::string& instance_dump() const { return instance_dump_; }

private:
    std::string instance_dump_;
};

}  // namespace matchaug
