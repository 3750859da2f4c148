#pragma once

#include <cmath>

namespace musecog {

enum class MergeMode { kMixing, kDepthwise };

inline double elu(double x) { return x > 0.0 ? x : std::exp(x) - 1.0; }
inline double elu_grad(double x) { return x > 0.0 ? 1.0 : std::exp(x); }

// Batched compute kernels behind the model's forward and backward passes.
// Two interchangeable backends share this interface: OmpKernels parallelizes
// with OpenMP, SerialKernels is the plain-loop reference used by the tests
// and the benchmark. Both accumulate each output element in a single thread
// with a fixed reduction order, so results do not depend on thread count.
//
// Layout conventions: all buffers are dense row-major doubles. A batched map
// is [B][rows][cols] unless a batch stride says otherwise (branch outputs
// live inside a wider concatenated map, hence the explicit strides on the
// convolution kernels).
//
// Same-length 1D cross-correlation pads the time axis with floor((k-1)/2)
// zeros on the left and ceil((k-1)/2) on the right.
#define MUSECOG_KERNEL_API(Name)                                               \
  struct Name {                                                                \
    /* out[b][f][t] = bias[f] + sum_{c,u} w[f][c][u] * x[b][c][t+u-pad] */     \
    static void conv1d_forward(int B, int C, int T, int F, int k,              \
                               const double* x, long x_bstride,                \
                               const double* w, const double* bias,            \
                               double* out, long out_bstride);                 \
    /* dw[f][c][u] = sum_{b,t} dout[b][f][t] * x[b][c][t+u-pad]; db likewise */\
    static void conv1d_wgrad(int B, int C, int T, int F, int k,                \
                             const double* x, long x_bstride,                  \
                             const double* dout, long dout_bstride,            \
                             double* dw, double* db);                          \
    /* per-channel mean and population variance over batch x time */          \
    static void bn_stats(int B, int F, int T, const double* x, double* mean,   \
                         double* var);                                         \
    static void bn_apply(int B, int F, int T, double eps, const double* x,     \
                         const double* mean, const double* var,               \
                         const double* gamma, const double* beta, double* y);  \
    static void bn_backward(int B, int F, int T, double eps, const double* x,  \
                            const double* mean, const double* var,             \
                            const double* gamma, const double* dy, double* dx, \
                            double* dgamma, double* dbeta);                    \
    static void elu_forward(long n, const double* x, double* y);               \
    /* dx[i] = dy[i] * elu'(x_pre[i]) */                                       \
    static void elu_backward(long n, const double* x_pre, const double* dy,    \
                             double* dx);                                      \
    static void avg_pool_forward(int B, int F, int T, int P, const double* x,  \
                                 double* out);                                 \
    /* overwrites dx */                                                        \
    static void avg_pool_backward(int B, int F, int T, int P,                  \
                                  const double* dout, double* dx);             \
    static void var_pool_forward(int B, int F, int T, int P, const double* x,  \
                                 double* out);                                 \
    /* accumulates into dx (pairs with avg_pool_backward) */                   \
    static void var_pool_backward(int B, int F, int T, int P, const double* x, \
                                  const double* dout, double* dx);             \
    /* mixing: out[b][g][t] = bias[g] + sum_f w[(g*F+f)*2+0]*avg[b][f][t]      \
                                      + w[(g*F+f)*2+1]*var[b][f][t]            \
       depthwise: out[b][f][t] = bias[f] + w[f*2]*avg + w[f*2+1]*var */        \
    static void merge_forward(int B, int F, int Tp, MergeMode mode,            \
                              const double* avg, const double* var,            \
                              const double* w, const double* bias,             \
                              double* out);                                    \
    static void merge_backward(int B, int F, int Tp, MergeMode mode,           \
                               const double* avg, const double* var,           \
                               const double* w, const double* dout,            \
                               double* davg, double* dvar, double* dw,         \
                               double* db);                                    \
    /* y[b][o] = bias[o] + sum_i w[o*In+i] * x[b][i] */                        \
    static void linear_forward(int B, int In, int Out, const double* x,        \
                               const double* w, const double* bias,            \
                               double* y);                                     \
    /* dx[b][i] = sum_o dy[b][o] * w[o*In+i], overwrites dx */                 \
    static void linear_backward_data(int B, int In, int Out, const double* w,  \
                                     const double* dy, double* dx);            \
    static void linear_backward_param(int B, int In, int Out, const double* x, \
                                      const double* dy, double* dw,            \
                                      double* db);                             \
  }

MUSECOG_KERNEL_API(OmpKernels);
MUSECOG_KERNEL_API(SerialKernels);

#undef MUSECOG_KERNEL_API

}  // namespace musecog
