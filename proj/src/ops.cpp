#include "axim/ops.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace axim {

namespace {

int mod_pos(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Image valid_convolve(const Kernel& k, const Image& a) {
  require(a.rows() >= k.rows() && a.cols() >= k.cols(),
          "valid_convolve: kernel " + std::to_string(k.rows()) + "x" +
              std::to_string(k.cols()) + " exceeds image " + std::to_string(a.rows()) +
              "x" + std::to_string(a.cols()));
  const int mk = k.rows(), nk = k.cols();
  Image out(a.rows() - mk + 1, a.cols() - nk + 1);
  for (int j = 0; j < out.cols(); ++j) {
    for (int i = 0; i < out.rows(); ++i) {
      double acc = 0.0;
      for (int p = 0; p < mk; ++p) {
        for (int q = 0; q < nk; ++q) {
          acc += k.at(p, q) * a.at(i + mk - 1 - p, j + nk - 1 - q);
        }
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

Image full_convolve(const Kernel& k, const Image& a) {
  const int mk = k.rows(), nk = k.cols();
  const int ma = a.rows(), na = a.cols();
  Image out(ma + mk - 1, na + nk - 1);
  for (int j = 0; j < out.cols(); ++j) {
    const int qlo = std::max(0, j - na + 1);
    const int qhi = std::min(j, nk - 1);
    for (int i = 0; i < out.rows(); ++i) {
      const int plo = std::max(0, i - ma + 1);
      const int phi = std::min(i, mk - 1);
      double acc = 0.0;
      for (int p = plo; p <= phi; ++p) {
        for (int q = qlo; q <= qhi; ++q) {
          acc += k.at(p, q) * a.at(i - p, j - q);
        }
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

Image circular_convolve(const Image& kbar, const Image& abar) {
  require(kbar.same_shape(abar), "circular_convolve: arguments must have equal dimensions");
  const int m = kbar.rows(), n = kbar.cols();
  Image out(m, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < n; ++q) {
          acc += kbar.at(p, q) * abar.at(mod_pos(i - p, m), mod_pos(j - q, n));
        }
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

Image circular_shift(const Image& a, int p, int q) {
  require(1 <= p && p <= a.rows() && 1 <= q && q <= a.cols(),
          "circular_shift: shift (" + std::to_string(p) + ", " + std::to_string(q) +
              ") out of range for " + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols()));
  Image out(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      out.at(i, j) = a.at(mod_pos(i - (p - 1), a.rows()), mod_pos(j - (q - 1), a.cols()));
    }
  }
  return out;
}

int circ_add(int a, int b, int c) {
  require(c >= 1 && 1 <= a && a <= c && 1 <= b && b <= c,
          "circ_add: arguments outside {1, ..., c}");
  return mod_pos(a + b - 2, c) + 1;
}

int circ_sub(int a, int b, int c) {
  require(c >= 1 && 1 <= a && a <= c && 1 <= b && b <= c,
          "circ_sub: arguments outside {1, ..., c}");
  return mod_pos(a - b, c) + 1;
}

Kernel rotate180(const Kernel& k) {
  Kernel out(k.rows(), k.cols());
  for (int j = 0; j < k.cols(); ++j) {
    for (int i = 0; i < k.rows(); ++i) {
      out.at(i, j) = k.at(k.rows() - 1 - i, k.cols() - 1 - j);
    }
  }
  return out;
}

Image window_rows(const Image& a, const IndexRange& r) {
  require(r.total == a.rows(), "window_rows: range ambient " + std::to_string(r.total) +
                                   " does not match image height " +
                                   std::to_string(a.rows()));
  Image out(r.width(), a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < out.rows(); ++i) {
      out.at(i, j) = a.at(i + r.lo - 1, j);
    }
  }
  return out;
}

Image zero_pad_rows(const Image& a, const IndexRange& r) {
  require(r.width() == a.rows(), "zero_pad_rows: range width " + std::to_string(r.width()) +
                                     " does not match image height " +
                                     std::to_string(a.rows()));
  Image out(r.total, a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      out.at(i + r.lo - 1, j) = a.at(i, j);
    }
  }
  return out;
}

Image window_block(const Image& a, const IndexRange& rr, const IndexRange& cr) {
  require(rr.total == a.rows() && cr.total == a.cols(),
          "window_block: range ambient does not match image dimensions");
  Image out(rr.width(), cr.width());
  for (int j = 0; j < out.cols(); ++j) {
    for (int i = 0; i < out.rows(); ++i) {
      out.at(i, j) = a.at(i + rr.lo - 1, j + cr.lo - 1);
    }
  }
  return out;
}

Image zero_pad_block(const Image& a, const IndexRange& rr, const IndexRange& cr) {
  require(rr.width() == a.rows() && cr.width() == a.cols(),
          "zero_pad_block: range width does not match image dimensions");
  Image out(rr.total, cr.total);
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      out.at(i + rr.lo - 1, j + cr.lo - 1) = a.at(i, j);
    }
  }
  return out;
}

Image basis_image(int rows, int cols, int p, int q) {
  require(1 <= p && p <= rows && 1 <= q && q <= cols, "basis_image: position out of range");
  Image out(rows, cols);
  out.at(p - 1, q - 1) = 1.0;
  return out;
}

}  // namespace axim
