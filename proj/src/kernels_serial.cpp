#include "musecog/kernels.hpp"

// Reference backend: direct loops written straight from the layer
// definitions, one scalar accumulator per output element. Kept serial and
// unclever on purpose; the tests hold OmpKernels to this implementation and
// the benchmark measures the gap.

namespace musecog {

void SerialKernels::conv1d_forward(int B, int C, int T, int F, int k,
                                   const double* x, long x_bstride,
                                   const double* w, const double* bias,
                                   double* out, long out_bstride) {
  const int pad = (k - 1) / 2;
  for (int b = 0; b < B; ++b) {
    const double* xb = x + b * x_bstride;
    double* ob = out + b * out_bstride;
    for (int f = 0; f < F; ++f) {
      for (int t = 0; t < T; ++t) {
        double acc = bias[f];
        for (int c = 0; c < C; ++c) {
          for (int u = 0; u < k; ++u) {
            const int j = t + u - pad;
            if (j >= 0 && j < T) {
              acc += w[(size_t(f) * C + c) * k + u] * xb[size_t(c) * T + j];
            }
          }
        }
        ob[size_t(f) * T + t] = acc;
      }
    }
  }
}

void SerialKernels::conv1d_wgrad(int B, int C, int T, int F, int k,
                                 const double* x, long x_bstride,
                                 const double* dout, long dout_bstride,
                                 double* dw, double* db) {
  const int pad = (k - 1) / 2;
  for (int f = 0; f < F; ++f) {
    for (int c = 0; c < C; ++c) {
      for (int u = 0; u < k; ++u) {
        double acc = 0.0;
        for (int b = 0; b < B; ++b) {
          const double* xb = x + b * x_bstride;
          const double* gb = dout + b * dout_bstride + size_t(f) * T;
          for (int t = 0; t < T; ++t) {
            const int j = t + u - pad;
            if (j >= 0 && j < T) acc += gb[t] * xb[size_t(c) * T + j];
          }
        }
        dw[(size_t(f) * C + c) * k + u] = acc;
      }
    }
    double acc = 0.0;
    for (int b = 0; b < B; ++b) {
      const double* gb = dout + b * dout_bstride + size_t(f) * T;
      for (int t = 0; t < T; ++t) acc += gb[t];
    }
    db[f] = acc;
  }
}

void SerialKernels::bn_stats(int B, int F, int T, const double* x, double* mean,
                             double* var) {
  const long n = long(B) * T;
  for (int f = 0; f < F; ++f) {
    double m = 0.0;
    for (int b = 0; b < B; ++b) {
      const double* row = x + (size_t(b) * F + f) * T;
      for (int t = 0; t < T; ++t) m += row[t];
    }
    m /= n;
    double v = 0.0;
    for (int b = 0; b < B; ++b) {
      const double* row = x + (size_t(b) * F + f) * T;
      for (int t = 0; t < T; ++t) {
        const double d = row[t] - m;
        v += d * d;
      }
    }
    mean[f] = m;
    var[f] = v / n;
  }
}

void SerialKernels::bn_apply(int B, int F, int T, double eps, const double* x,
                             const double* mean, const double* var,
                             const double* gamma, const double* beta,
                             double* y) {
  for (int b = 0; b < B; ++b) {
    for (int f = 0; f < F; ++f) {
      const double inv_sd = 1.0 / std::sqrt(var[f] + eps);
      const double* in = x + (size_t(b) * F + f) * T;
      double* out = y + (size_t(b) * F + f) * T;
      for (int t = 0; t < T; ++t) {
        out[t] = gamma[f] * (in[t] - mean[f]) * inv_sd + beta[f];
      }
    }
  }
}

void SerialKernels::bn_backward(int B, int F, int T, double eps,
                                const double* x, const double* mean,
                                const double* var, const double* gamma,
                                const double* dy, double* dx, double* dgamma,
                                double* dbeta) {
  const long n = long(B) * T;
  for (int f = 0; f < F; ++f) {
    const double inv_sd = 1.0 / std::sqrt(var[f] + eps);
    double sum_dy = 0.0;
    double sum_dy_xhat = 0.0;
    for (int b = 0; b < B; ++b) {
      const double* xr = x + (size_t(b) * F + f) * T;
      const double* gr = dy + (size_t(b) * F + f) * T;
      for (int t = 0; t < T; ++t) {
        const double xhat = (xr[t] - mean[f]) * inv_sd;
        sum_dy += gr[t];
        sum_dy_xhat += gr[t] * xhat;
      }
    }
    dgamma[f] = sum_dy_xhat;
    dbeta[f] = sum_dy;
    const double mean_dy = sum_dy / n;
    const double mean_dy_xhat = sum_dy_xhat / n;
    for (int b = 0; b < B; ++b) {
      const double* xr = x + (size_t(b) * F + f) * T;
      const double* gr = dy + (size_t(b) * F + f) * T;
      double* dr = dx + (size_t(b) * F + f) * T;
      for (int t = 0; t < T; ++t) {
        const double xhat = (xr[t] - mean[f]) * inv_sd;
        dr[t] = gamma[f] * inv_sd * (gr[t] - mean_dy - xhat * mean_dy_xhat);
      }
    }
  }
}

void SerialKernels::elu_forward(long n, const double* x, double* y) {
  for (long i = 0; i < n; ++i) y[i] = elu(x[i]);
}

void SerialKernels::elu_backward(long n, const double* x_pre, const double* dy,
                                 double* dx) {
  for (long i = 0; i < n; ++i) dx[i] = dy[i] * elu_grad(x_pre[i]);
}

void SerialKernels::avg_pool_forward(int B, int F, int T, int P,
                                     const double* x, double* out) {
  const int Tp = T / P;
  for (int b = 0; b < B; ++b) {
    for (int f = 0; f < F; ++f) {
      const double* in = x + (size_t(b) * F + f) * T;
      double* o = out + (size_t(b) * F + f) * Tp;
      for (int tp = 0; tp < Tp; ++tp) {
        double sum = 0.0;
        for (int i = 0; i < P; ++i) sum += in[tp * P + i];
        o[tp] = sum / P;
      }
    }
  }
}

void SerialKernels::avg_pool_backward(int B, int F, int T, int P,
                                      const double* dout, double* dx) {
  const int Tp = T / P;
  for (int b = 0; b < B; ++b) {
    for (int f = 0; f < F; ++f) {
      const double* g = dout + (size_t(b) * F + f) * Tp;
      double* d = dx + (size_t(b) * F + f) * T;
      for (int tp = 0; tp < Tp; ++tp) {
        for (int i = 0; i < P; ++i) d[tp * P + i] = g[tp] / P;
      }
    }
  }
}

void SerialKernels::var_pool_forward(int B, int F, int T, int P,
                                     const double* x, double* out) {
  const int Tp = T / P;
  for (int b = 0; b < B; ++b) {
    for (int f = 0; f < F; ++f) {
      const double* in = x + (size_t(b) * F + f) * T;
      double* o = out + (size_t(b) * F + f) * Tp;
      for (int tp = 0; tp < Tp; ++tp) {
        double mean = 0.0;
        for (int i = 0; i < P; ++i) mean += in[tp * P + i];
        mean /= P;
        double v = 0.0;
        for (int i = 0; i < P; ++i) {
          const double d = in[tp * P + i] - mean;
          v += d * d;
        }
        o[tp] = v / P;
      }
    }
  }
}

void SerialKernels::var_pool_backward(int B, int F, int T, int P,
                                      const double* x, const double* dout,
                                      double* dx) {
  const int Tp = T / P;
  for (int b = 0; b < B; ++b) {
    for (int f = 0; f < F; ++f) {
      const double* in = x + (size_t(b) * F + f) * T;
      const double* g = dout + (size_t(b) * F + f) * Tp;
      double* d = dx + (size_t(b) * F + f) * T;
      for (int tp = 0; tp < Tp; ++tp) {
        double mean = 0.0;
        for (int i = 0; i < P; ++i) mean += in[tp * P + i];
        mean /= P;
        for (int i = 0; i < P; ++i) {
          d[tp * P + i] += g[tp] * 2.0 * (in[tp * P + i] - mean) / P;
        }
      }
    }
  }
}

void SerialKernels::merge_forward(int B, int F, int Tp, MergeMode mode,
                                  const double* avg, const double* var,
                                  const double* w, const double* bias,
                                  double* out) {
  for (int b = 0; b < B; ++b) {
    for (int g = 0; g < F; ++g) {
      double* o = out + (size_t(b) * F + g) * Tp;
      for (int t = 0; t < Tp; ++t) {
        double acc = bias[g];
        if (mode == MergeMode::kMixing) {
          for (int f = 0; f < F; ++f) {
            const size_t i = (size_t(b) * F + f) * Tp + t;
            acc += w[(size_t(g) * F + f) * 2 + 0] * avg[i] +
                   w[(size_t(g) * F + f) * 2 + 1] * var[i];
          }
        } else {
          const size_t i = (size_t(b) * F + g) * Tp + t;
          acc += w[size_t(g) * 2 + 0] * avg[i] + w[size_t(g) * 2 + 1] * var[i];
        }
        o[t] = acc;
      }
    }
  }
}

void SerialKernels::merge_backward(int B, int F, int Tp, MergeMode mode,
                                   const double* avg, const double* var,
                                   const double* w, const double* dout,
                                   double* davg, double* dvar, double* dw,
                                   double* db) {
  const size_t nw = mode == MergeMode::kMixing ? size_t(F) * F * 2 : size_t(F) * 2;
  for (size_t i = 0; i < nw; ++i) dw[i] = 0.0;
  for (int g = 0; g < F; ++g) {
    double acc = 0.0;
    for (int b = 0; b < B; ++b) {
      const double* gr = dout + (size_t(b) * F + g) * Tp;
      for (int t = 0; t < Tp; ++t) acc += gr[t];
    }
    db[g] = acc;
  }
  if (mode == MergeMode::kMixing) {
    for (int g = 0; g < F; ++g) {
      for (int f = 0; f < F; ++f) {
        double acc_a = 0.0, acc_v = 0.0;
        for (int b = 0; b < B; ++b) {
          const double* gr = dout + (size_t(b) * F + g) * Tp;
          const double* ar = avg + (size_t(b) * F + f) * Tp;
          const double* vr = var + (size_t(b) * F + f) * Tp;
          for (int t = 0; t < Tp; ++t) {
            acc_a += gr[t] * ar[t];
            acc_v += gr[t] * vr[t];
          }
        }
        dw[(size_t(g) * F + f) * 2 + 0] = acc_a;
        dw[(size_t(g) * F + f) * 2 + 1] = acc_v;
      }
    }
    for (int b = 0; b < B; ++b) {
      for (int f = 0; f < F; ++f) {
        double* da = davg + (size_t(b) * F + f) * Tp;
        double* dv = dvar + (size_t(b) * F + f) * Tp;
        for (int t = 0; t < Tp; ++t) {
          double acc_a = 0.0, acc_v = 0.0;
          for (int g = 0; g < F; ++g) {
            const double gval = dout[(size_t(b) * F + g) * Tp + t];
            acc_a += gval * w[(size_t(g) * F + f) * 2 + 0];
            acc_v += gval * w[(size_t(g) * F + f) * 2 + 1];
          }
          da[t] = acc_a;
          dv[t] = acc_v;
        }
      }
    }
  } else {
    for (int f = 0; f < F; ++f) {
      double acc_a = 0.0, acc_v = 0.0;
      for (int b = 0; b < B; ++b) {
        const double* gr = dout + (size_t(b) * F + f) * Tp;
        const double* ar = avg + (size_t(b) * F + f) * Tp;
        const double* vr = var + (size_t(b) * F + f) * Tp;
        for (int t = 0; t < Tp; ++t) {
          acc_a += gr[t] * ar[t];
          acc_v += gr[t] * vr[t];
        }
      }
      dw[size_t(f) * 2 + 0] = acc_a;
      dw[size_t(f) * 2 + 1] = acc_v;
    }
    for (int b = 0; b < B; ++b) {
      for (int f = 0; f < F; ++f) {
        const double* gr = dout + (size_t(b) * F + f) * Tp;
        double* da = davg + (size_t(b) * F + f) * Tp;
        double* dv = dvar + (size_t(b) * F + f) * Tp;
        for (int t = 0; t < Tp; ++t) {
          da[t] = gr[t] * w[size_t(f) * 2 + 0];
          dv[t] = gr[t] * w[size_t(f) * 2 + 1];
        }
      }
    }
  }
}

void SerialKernels::linear_forward(int B, int In, int Out, const double* x,
                                   const double* w, const double* bias,
                                   double* y) {
  for (int b = 0; b < B; ++b) {
    const double* xb = x + size_t(b) * In;
    double* yb = y + size_t(b) * Out;
    for (int o = 0; o < Out; ++o) {
      double acc = bias[o];
      const double* wr = w + size_t(o) * In;
      for (int i = 0; i < In; ++i) acc += wr[i] * xb[i];
      yb[o] = acc;
    }
  }
}

void SerialKernels::linear_backward_data(int B, int In, int Out,
                                         const double* w, const double* dy,
                                         double* dx) {
  for (int b = 0; b < B; ++b) {
    const double* gb = dy + size_t(b) * Out;
    double* db_ = dx + size_t(b) * In;
    for (int i = 0; i < In; ++i) {
      double acc = 0.0;
      for (int o = 0; o < Out; ++o) acc += gb[o] * w[size_t(o) * In + i];
      db_[i] = acc;
    }
  }
}

void SerialKernels::linear_backward_param(int B, int In, int Out,
                                          const double* x, const double* dy,
                                          double* dw, double* db) {
  for (int o = 0; o < Out; ++o) {
    double acc_b = 0.0;
    double* wr = dw + size_t(o) * In;
    for (int i = 0; i < In; ++i) wr[i] = 0.0;
    for (int b = 0; b < B; ++b) {
      const double g = dy[size_t(b) * Out + o];
      acc_b += g;
      const double* xb = x + size_t(b) * In;
      for (int i = 0; i < In; ++i) wr[i] += g * xb[i];
    }
    db[o] = acc_b;
  }
}

}  // namespace musecog
