#include "slowlight/errors.hpp"

#include <sstream>

namespace slowlight {

namespace {

std::string horizon_message(double requested, double required) {
    std::ostringstream os;
    os << "horizon " << requested << " s is too short; the slowest path needs at least "
       << required << " s";
    return os.str();
}

std::string config_message(std::size_t line, const std::string& field, const std::string& message) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ": ";
    if (!field.empty()) os << "'" << field << "': ";
    os << message;
    return os.str();
}

}  // namespace

HorizonTooShort::HorizonTooShort(double requested, double required)
    : Error(horizon_message(requested, required)), requested_(requested), required_(required) {}

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : Error(config_message(line, field, message)), line_(line), field_(std::move(field)) {}

}  // namespace slowlight
