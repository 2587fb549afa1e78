#pragma once

#include <cmath>
#include <limits>

#include "rsea/common.hpp"

namespace rsea {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

enum class Role { Tx, Rx, Jx };

struct VehicleState {
    Vec2 position;
    Vec2 velocity;
    Role role = Role::Rx;

    double speed() const { return velocity.norm(); }
};

/// Right triangle spanned by the jammer and the receiver in the receiver's
/// motion frame. dx = (rx - jx) along the receiver's heading, so cos_theta > 0
/// while the jammer trails the receiver. dy is the across-track offset, d the
/// hypotenuse.
struct AopGeometry {
    double dx = 0.0;
    double dy = 0.0;
    double d = 0.0;
    double cos_theta = 1.0;
};

enum class DirectionMode { SameDirection, OppositeDirection };

struct RelativeSpeed {
    double value = 0.0;  // m/s
    DirectionMode mode = DirectionMode::SameDirection;
};

/// Unit vector along the receiver's heading; +x when the receiver is at rest.
Vec2 motion_axis(const VehicleState& rx);

AopGeometry aop_geometry(const VehicleState& jx, const VehicleState& rx);

/// |u_jx cos(theta) + u_rx| (same direction) or |u_jx cos(theta) - u_rx|.
RelativeSpeed relative_speed_truth(double u_jx, double u_rx, double cos_theta, DirectionMode mode);

/// Sign of the jammer's velocity projected on the receiver's heading.
DirectionMode direction_mode(const VehicleState& jx, const VehicleState& rx);

/// Ground-truth metric for the current geometry.
RelativeSpeed relative_speed_truth(const VehicleState& jx, const VehicleState& rx);

/// Constant-acceleration step. Speed saturates at max_speed; once saturated the
/// remainder of the step is uniform motion.
VehicleState advance(const VehicleState& state, double dt, Vec2 accel,
                     double max_speed = std::numeric_limits<double>::infinity());

}  // namespace rsea
