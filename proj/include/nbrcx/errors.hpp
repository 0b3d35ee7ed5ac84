#ifndef NBRCX_ERRORS_HPP
#define NBRCX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nbrcx {

/** Invalid configuration or out-of-range user input. CLI exit code 2. */
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/** An enumeration would exceed its configured candidate budget. CLI exit code 3. */
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double bound)
        : std::runtime_error(what), bound_(bound) {}

    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

/** File system failure, carrying the offending path. CLI exit code 4. */
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** A probability bound evaluated outside its hypotheses. */
class BoundInapplicable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace nbrcx

#endif
