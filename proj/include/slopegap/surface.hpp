#pragma once

// Rectilinear (sheared) model of a translation surface: axis-aligned
// rectangles whose outer boundary is glued by translations. All work happens
// in sheared coordinates; M^-1 recovers original holonomy.

#include <optional>
#include <string>
#include <vector>

#include "slopegap/geometry.hpp"

namespace slopegap {

struct Rect {
  Vec lo, hi;
  FieldElement width() const { return hi.x() - lo.x(); }
  FieldElement height() const { return hi.y() - lo.y(); }
};

/// Two boundary segments identified by translation. For a horizontal gluing
/// the flow leaves upward through `exit` (a top edge) and re-enters through
/// `enter` (a bottom edge); for a vertical gluing, rightward through a right
/// edge into a left edge. Segments run from `start` in the +x (+y) direction.
struct Gluing {
  std::string name;
  bool vertical = false;
  Vec exit_start, enter_start;
  FieldElement length;

  Vec shift() const { return enter_start - exit_start; }
};

/// Result of tracing a displacement from a vertex.
enum class TraceResult { exact_hit, early_vertex, no_hit };

class StaircaseSurface {
 public:
  /// Validates the presentation: rectangles pairwise interior-disjoint, every
  /// outer boundary portion glued exactly once, vertex displacements in the
  /// generator lattice, every vertex class a genuine cone point.
  static StaircaseSurface build(std::vector<Rect> rects, std::vector<Gluing> gluings,
                                std::vector<FieldElement> generators, const Mat& shear);

  const std::vector<Rect>& rects() const { return rects_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  /// Planar positions of cone-point copies (rectangle corners and gluing endpoints).
  const std::vector<Vec>& vertices() const { return vertices_; }
  /// Cone angle of each vertex class, in units of pi.
  const std::vector<int>& class_angles() const { return class_angle_pi_; }
  int vertex_class(size_t v) const { return vertex_class_[v]; }
  const std::vector<FieldElement>& generators() const { return generators_; }
  const Mat& shear() const { return shear_; }
  const Mat& shear_inv() const { return shear_inv_; }
  /// Sum of rectangle areas (sheared coordinates).
  FieldElement area() const;

  /// Parameter s in (0, s_max] of the first cone point met by the ray
  /// start + s*d leaving vertex `start`. The copy of the direction is chosen
  /// by perturbing to the left of d (side=+1) or to the right (side=-1);
  /// nullopt when no hit or when the perturbed ray does not enter the surface.
  std::optional<FieldElement> first_hit(const Vec& start, const Vec& d, const FieldElement& s_max,
                                        int side) const;

  TraceResult trace(size_t start_vertex, const Vec& displacement) const;
  /// Saddle-connection test in sheared coordinates: some vertex copy reaches
  /// another cone point at exactly `v` with nothing in between.
  bool is_holonomy(const Vec& v) const;

  /// Rectangle holding start + eps*d + eps^2*side*perp(d), or -1.
  int locate(const Vec& x, const Vec& d, int side) const;
  /// Rectangle the ray enters at boundary point x (on a vertical side when
  /// `vertical_side`), moving x through a gluing when needed.
  int cross_boundary(Vec& x, const Vec& d, int side, bool vertical_side) const;
  /// Indices of the vertices on the closed rectangle r.
  const std::vector<size_t>& rect_vertices(size_t r) const { return rect_vertices_[r]; }

 private:
  std::vector<Rect> rects_;
  std::vector<Gluing> gluings_;
  std::vector<Vec> vertices_;
  std::vector<int> vertex_class_;
  std::vector<int> class_angle_pi_;
  std::vector<std::vector<size_t>> rect_vertices_;  // vertices on each closed rectangle
  std::vector<FieldElement> generators_;
  Mat shear_, shear_inv_;
  double min_width_ = 0, min_height_ = 0;
};

/// All (sum n_i g_i, sum m_i g_i) with n_i, m_i >= 0 inside [0,x_max]x[0,y_max],
/// deduplicated, sorted by slope (nonzero-y part first by winner order) then length.
std::vector<Vec> generate_L(const StaircaseSurface& s, const FieldElement& x_max,
                            const FieldElement& y_max);

/// Non-negative integer combinations of `gens` with value in [0, bound], distinct.
std::vector<FieldElement> lattice_values(const std::vector<FieldElement>& gens,
                                         const FieldElement& bound);

/// Integer coordinates of e in the Z-span of gens, if it lies there.
std::optional<std::vector<Integer>> lattice_coords(const std::vector<FieldElement>& gens,
                                                   const FieldElement& e);

}  // namespace slopegap
