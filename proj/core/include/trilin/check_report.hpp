#pragma once

#include <string>

namespace trilin {

/// Direction of a check: measured <= threshold or measured >= threshold.
enum class CheckDirection { AtMost, AtLeast };

/// Named verification outcome with the measured value and its threshold.
struct CheckReport {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    CheckDirection direction = CheckDirection::AtMost;
    std::string details;
    long samples_used = 0;

    static CheckReport at_most(std::string name, double measured, double threshold,
                               std::string details = {}, long samples = 0) {
        CheckReport r;
        r.name = std::move(name);
        r.measured = measured;
        r.threshold = threshold;
        r.direction = CheckDirection::AtMost;
        r.passed = measured <= threshold;
        r.details = std::move(details);
        r.samples_used = samples;
        return r;
    }

    static CheckReport at_least(std::string name, double measured, double threshold,
                                std::string details = {}, long samples = 0) {
        CheckReport r;
        r.name = std::move(name);
        r.measured = measured;
        r.threshold = threshold;
        r.direction = CheckDirection::AtLeast;
        r.passed = measured >= threshold;
        r.details = std::move(details);
        r.samples_used = samples;
        return r;
    }
};

}  // namespace trilin
