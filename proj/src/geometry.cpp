#include "rsea/geometry.hpp"

#include <algorithm>

namespace rsea {

Vec2 motion_axis(const VehicleState& rx)
{
    const double s = rx.speed();
    if (s == 0.0) {
        return {1.0, 0.0};
    }
    return rx.velocity * (1.0 / s);
}

AopGeometry aop_geometry(const VehicleState& jx, const VehicleState& rx)
{
    const Vec2 axis = motion_axis(rx);
    const Vec2 normal{-axis.y, axis.x};
    const Vec2 sep = rx.position - jx.position;

    AopGeometry g;
    g.dx = sep.dot(axis);
    g.dy = sep.dot(normal);
    g.d = std::hypot(g.dx, g.dy);
    // Coincident vehicles: limit of an approach along the motion axis.
    g.cos_theta = g.d > 0.0 ? std::clamp(g.dx / g.d, -1.0, 1.0) : 1.0;
    return g;
}

RelativeSpeed relative_speed_truth(double u_jx, double u_rx, double cos_theta, DirectionMode mode)
{
    const double projected = u_jx * cos_theta;
    const double v = mode == DirectionMode::SameDirection ? projected + u_rx : projected - u_rx;
    return {std::abs(v), mode};
}

DirectionMode direction_mode(const VehicleState& jx, const VehicleState& rx)
{
    return jx.velocity.dot(motion_axis(rx)) >= 0.0 ? DirectionMode::SameDirection
                                                   : DirectionMode::OppositeDirection;
}

RelativeSpeed relative_speed_truth(const VehicleState& jx, const VehicleState& rx)
{
    const AopGeometry g = aop_geometry(jx, rx);
    return relative_speed_truth(jx.speed(), rx.speed(), g.cos_theta, direction_mode(jx, rx));
}

VehicleState advance(const VehicleState& state, double dt, Vec2 accel, double max_speed)
{
    if (!(dt > 0.0)) {
        throw DomainError("advance: dt must be > 0");
    }
    VehicleState out = state;
    Vec2 v = state.velocity;
    const double speed = v.norm();
    if (speed > max_speed) {
        v = v * (max_speed / speed);
    }

    // Time until |v + a t| reaches max_speed, if it ever does within dt.
    double t_sat = dt;
    const double aa = accel.dot(accel);
    if (aa > 0.0 && std::isfinite(max_speed)) {
        const double va = v.dot(accel);
        const double c = v.dot(v) - max_speed * max_speed;
        if (c >= 0.0 && va >= 0.0) {
            t_sat = 0.0;
        } else {
            const double disc = va * va - aa * c;
            if (disc >= 0.0) {
                const double root = (-va + std::sqrt(disc)) / aa;
                if (root >= 0.0 && root < dt) {
                    t_sat = root;
                }
            }
        }
    }

    out.position = state.position + v * t_sat + 0.5 * t_sat * t_sat * accel;
    Vec2 v_end = v + t_sat * accel;
    if (t_sat < dt) {
        const double s = v_end.norm();
        if (s > max_speed && s > 0.0) {
            v_end = v_end * (max_speed / s);
        }
        out.position = out.position + v_end * (dt - t_sat);
    }
    out.velocity = v_end;
    return out;
}

}  // namespace rsea
