#pragma once

#include <string>

namespace conftc {

/// Parameters of one motion-planning complexity query: n robots in m-space
/// with p point obstacles, s-stage planners. The unpunctured single-robot
/// case (n, p) = (1, 0) is contractible and excluded.
struct TCQuery {
    int m = 3;
    int n = 2;
    int p = 0;
    int s = 2;
};

/// Validates m >= 2, n >= 1, p >= 0, s >= 2, (n, p) != (1, 0).
TCQuery make_tc_query(int m, int n, int p, int s);

struct TCValue {
    int value = 0;
    std::string case_label;  // which row of the case table applied
};

/// Closed form for the s-stage complexity:
///   s(n-1)-1  if p = 0 and m even      s(n-1)  if p = 0 and m odd
///   sn-1      if p = 1 and m even      sn      otherwise
TCValue tc_s(const TCQuery& q);

/// Maximal length of a nonzero product of diagonal-kernel classes for the
/// unpunctured space: s(n-1) - 1 + (m odd ? 1 : 0). Requires n, s >= 2.
int cl_s_conf(int m, int n, int s);

/// Category of the configuration space: n - 1 unpunctured, n punctured.
/// Requires n >= 1 and (n, p) != (1, 0).
int cat_conf(int m, int n, int p);

/// Complexity of a wedge of p spheres of dimension m-1 (the n = 1 case):
/// s - 1 if p = 1 and m even, else s. Requires p >= 1, m >= 2, s >= 2.
int tc_s_wedge(int p, int m, int s);

/// Dimension-by-connectivity bound: floor(s*dim / (conn+1)).
int upper_bound_dim_conn(int dim, int conn, int s);

/// The spaces carry CW models of dimension (n-1)(m-1) (p = 0) or n(m-1)
/// (p >= 1), both (m-2)-connected.
int space_dim(int m, int n, int p);
int space_conn(int m);

}  // namespace conftc
