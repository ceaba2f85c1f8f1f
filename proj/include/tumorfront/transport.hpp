#pragma once

// Second-order central (local Lax-Friedrichs + MUSCL) update for
//   q_t = (q u)_x + q h
// on a uniform cell-centered grid, with the growth term taken implicitly.

#include <stdexcept>
#include <vector>

namespace tumorfront {

/// Raised when the time step exceeds the advective or growth limit.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, double admissible_dt)
      : std::runtime_error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// Undivided limited slope from three consecutive values: zero at an
/// extremum, otherwise the smaller of the two one-sided differences.
double limited_slope(double left, double center, double right);

struct TransportBoundary {
  double ghost_left = 0.0;
  double ghost_right = 0.0;
};

/// One step of the scheme. `u_faces` has n+1 entries, u_faces[k] sitting on
/// the face between cells k-1 and k. `growth` holds the per-cell rate h.
/// Throws CflViolation when dt max|u| / dx > cfl or dt max h >= 1.
std::vector<double> transport_step(const std::vector<double>& q,
                                   const std::vector<double>& u_faces,
                                   const std::vector<double>& growth, double dx, double dt,
                                   double cfl, const TransportBoundary& bc = {});

/// Largest dt allowed by the advective CFL number for the given faces.
double advective_dt_limit(const std::vector<double>& u_faces, double dx, double cfl);

}  // namespace tumorfront
