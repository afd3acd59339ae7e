#pragma once

#include <stdexcept>
#include <string>

namespace microsim {

/// Input or configuration violates a documented contract (CLI exit code 1).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A computation could not complete on valid input (CLI exit code 2).
class RuntimeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Wraps an error raised inside a named pipeline stage.
class StageError : public std::runtime_error {
  public:
    StageError(std::string stage, const std::string &what, bool validation)
        : std::runtime_error(stage + ": " + what), stage_{std::move(stage)},
          validation_{validation} {}

    const std::string &stage() const noexcept { return stage_; }
    bool is_validation() const noexcept { return validation_; }

  private:
    std::string stage_;
    bool validation_;
};

/// Runs fn, re-throwing any library error tagged with the stage name.
template <typename Fn> decltype(auto) in_stage(const char *stage, Fn &&fn) {
    try {
        return fn();
    } catch (const StageError &) {
        throw;
    } catch (const ValidationError &e) {
        throw StageError(stage, e.what(), true);
    } catch (const std::exception &e) {
        throw StageError(stage, e.what(), false);
    }
}

} // namespace microsim
