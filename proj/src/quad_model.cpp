#include "evprop/quad_model.hpp"

namespace evprop {

double total_thrust(const std::array<double, 4>& omega, double c_f) {
    double sum = 0.0;
    for (double w : omega) sum += w * w;
    return c_f * sum;
}

double roll_rate_from_rpm(const std::array<double, 4>& omega, double k_roll,
                          const std::array<int, 2>& right_motors,
                          const std::array<int, 2>& left_motors) {
    double right = 0.0, left = 0.0;
    for (int i : right_motors) right += omega[i - 1] * omega[i - 1];
    for (int i : left_motors) left += omega[i - 1] * omega[i - 1];
    return k_roll * (right - left);
}

} // namespace evprop
