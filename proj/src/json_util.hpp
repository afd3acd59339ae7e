#pragma once

// Strict JSON object reader: every key must be consumed, otherwise finish()
// reports the unknown ones.

#include "microsim/error.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <type_traits>

namespace microsim::detail {

class StrictObject {
  public:
    StrictObject(const nlohmann::json &j, std::string path) : j_{j}, path_{std::move(path)} {
        if (!j_.is_object()) {
            throw ValidationError(path_ + ": expected a JSON object");
        }
    }

    bool has(const std::string &key) const { return j_.contains(key); }

    const nlohmann::json *child(const std::string &key) {
        if (!j_.contains(key)) {
            return nullptr;
        }
        used_.insert(key);
        return &j_.at(key);
    }

    std::string path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    template <typename T> void read(const std::string &key, T &target) {
        if (const auto *v = child(key)) {
            if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
                if (!v->is_number_integer()) {
                    throw ValidationError(path(key) + ": expected an integer");
                }
                if constexpr (std::is_unsigned_v<T>) {
                    if (v->is_number_integer() && !v->is_number_unsigned() && v->get<std::int64_t>() < 0) {
                        throw ValidationError(path(key) + ": expected a non-negative integer");
                    }
                }
            }
            try {
                target = v->get<T>();
            } catch (const nlohmann::json::exception &) {
                throw ValidationError(path(key) + ": wrong type");
            }
        }
    }

    void finish() const {
        for (const auto &[k, v] : j_.items()) {
            if (!used_.contains(k)) {
                throw ValidationError(path(k) + ": unknown key");
            }
        }
    }

  private:
    const nlohmann::json &j_;
    std::string path_;
    std::set<std::string> used_;
};

} // namespace microsim::detail
