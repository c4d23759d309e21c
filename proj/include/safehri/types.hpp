/*
 * Copyright (C) 2026 safehri contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace safehri {

/// Planar vector used for image-space positions (pixels) and
/// workspace positions / velocities / forces (meters, m/s, N).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Rescale to length at most `limit`, preserving direction.
inline Vec2 clamp_norm(Vec2 v, double limit) {
    const double n = v.norm();
    if (n <= limit || n == 0.0) return v;
    return v * (limit / n);
}

enum class MonitorState { Running, Paused };

enum class PauseCause { None, HumanInRange, UnexpectedContact };

/// Output contract of both safety monitors. `cause` is None exactly
/// when `state` is Running; `since` is the time the state began.
struct MonitorVerdict {
    MonitorState state = MonitorState::Running;
    PauseCause cause = PauseCause::None;
    double since = 0.0;

    bool paused() const { return state == MonitorState::Paused; }
    bool operator==(const MonitorVerdict&) const = default;
};

// Stream / contract violations. These signal corrupted input or a
// scheduling bug in the host, not recoverable conditions.
struct NonMonotonicTimestamp : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct JointIndexOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StaleInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidScenario : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedLog : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const char* to_string(MonitorState s) {
    return s == MonitorState::Running ? "Running" : "Paused";
}

inline const char* to_string(PauseCause c) {
    switch (c) {
    case PauseCause::HumanInRange: return "HumanInRange";
    case PauseCause::UnexpectedContact: return "UnexpectedContact";
    default: return "None";
    }
}

} // namespace safehri
