#pragma once

// Grayscale image grid with the geometric primitives the patch pipeline
// needs: affine warp (bilinear, zero fill), crop, resize.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jigsaw {

struct Image {
    int h = 0;
    int w = 0;
    std::vector<float> px;  // row-major, h*w

    Image() = default;
    Image(int h_, int w_, float fill = 0.0f) : h(h_), w(w_), px(static_cast<std::size_t>(h_) * w_, fill) {}

    float& at(int r, int c) { return px[static_cast<std::size_t>(r) * w + c]; }
    float at(int r, int c) const { return px[static_cast<std::size_t>(r) * w + c]; }

    bool same_size(const Image& o) const { return h == o.h && w == o.w; }
};

// 2x3 affine map applied to (row, col) coordinates: out = A * (r, c, 1)^T.
struct Affine {
    // rows of the matrix: [a b c; d e f]
    double a = 1, b = 0, c = 0;
    double d = 0, e = 1, f = 0;

    static Affine identity() { return {}; }

    // this ∘ other: apply `other` first.
    Affine compose(const Affine& o) const {
        Affine r;
        r.a = a * o.a + b * o.d;
        r.b = a * o.b + b * o.e;
        r.c = a * o.c + b * o.f + c;
        r.d = d * o.a + e * o.d;
        r.e = d * o.b + e * o.e;
        r.f = d * o.c + e * o.f + f;
        return r;
    }

    Affine inverse() const {
        double det = a * e - b * d;
        if (std::abs(det) < 1e-12) throw std::invalid_argument("Affine::inverse: singular transform");
        Affine r;
        r.a = e / det;
        r.b = -b / det;
        r.d = -d / det;
        r.e = a / det;
        r.c = -(r.a * c + r.b * f);
        r.f = -(r.d * c + r.e * f);
        return r;
    }

    static Affine rotation_about(double deg, double cr, double cc) {
        double rad = deg * 3.14159265358979323846 / 180.0;
        double cs = std::cos(rad), sn = std::sin(rad);
        Affine r;
        r.a = cs;
        r.b = -sn;
        r.c = cr - cs * cr + sn * cc;
        r.d = sn;
        r.e = cs;
        r.f = cc - sn * cr - cs * cc;
        return r;
    }

    static Affine translation(double dr, double dc) {
        Affine r;
        r.c = dr;
        r.f = dc;
        return r;
    }

    static Affine scale_about(double s, double cr, double cc) {
        Affine r;
        r.a = s;
        r.e = s;
        r.c = cr * (1.0 - s);
        r.f = cc * (1.0 - s);
        return r;
    }
};

// Warp by the forward transform: out(p) = in(fwd^-1(p)), bilinear sampling,
// out-of-support pixels are 0 (MR background). Output values clamped to the
// input range [0,1] so interpolation never escapes it.
inline Image warp_affine(const Image& in, const Affine& fwd, int out_h, int out_w) {
    Image out(out_h, out_w, 0.0f);
    Affine inv = fwd.inverse();
    for (int r = 0; r < out_h; ++r) {
        for (int c = 0; c < out_w; ++c) {
            double sr = inv.a * r + inv.b * c + inv.c;
            double sc = inv.d * r + inv.e * c + inv.f;
            double fr = std::floor(sr), fc = std::floor(sc);
            int r0 = static_cast<int>(fr), c0 = static_cast<int>(fc);
            double wr = sr - fr, wc = sc - fc;
            auto sample = [&](int rr, int cc) -> double {
                if (rr < 0 || rr >= in.h || cc < 0 || cc >= in.w) return 0.0;
                return in.at(rr, cc);
            };
            double val = (1 - wr) * ((1 - wc) * sample(r0, c0) + wc * sample(r0, c0 + 1)) +
                         wr * ((1 - wc) * sample(r0 + 1, c0) + wc * sample(r0 + 1, c0 + 1));
            out.at(r, c) = static_cast<float>(std::clamp(val, 0.0, 1.0));
        }
    }
    return out;
}

inline Image crop(const Image& in, int r0, int c0, int ch, int cw) {
    if (r0 < 0 || c0 < 0 || r0 + ch > in.h || c0 + cw > in.w)
        throw std::invalid_argument("crop: window outside image");
    Image out(ch, cw);
    for (int r = 0; r < ch; ++r)
        for (int c = 0; c < cw; ++c) out.at(r, c) = in.at(r0 + r, c0 + c);
    return out;
}

// Bilinear resize; used for heatmap upsampling. Align-corners mapping so the
// image corners stay fixed.
inline Image resize_bilinear(const Image& in, int out_h, int out_w) {
    Image out(out_h, out_w);
    double sr = out_h > 1 ? static_cast<double>(in.h - 1) / (out_h - 1) : 0.0;
    double sc = out_w > 1 ? static_cast<double>(in.w - 1) / (out_w - 1) : 0.0;
    for (int r = 0; r < out_h; ++r) {
        for (int c = 0; c < out_w; ++c) {
            double u = r * sr, v = c * sc;
            int r0 = static_cast<int>(u), c0 = static_cast<int>(v);
            int r1 = std::min(r0 + 1, in.h - 1), c1 = std::min(c0 + 1, in.w - 1);
            double wr = u - r0, wc = v - c0;
            out.at(r, c) = static_cast<float>((1 - wr) * ((1 - wc) * in.at(r0, c0) + wc * in.at(r0, c1)) +
                                              wr * ((1 - wc) * in.at(r1, c0) + wc * in.at(r1, c1)));
        }
    }
    return out;
}

// Pad or center-crop to the target size; pad value 0.
inline Image fit_to(const Image& in, int th, int tw) {
    Image out(th, tw, 0.0f);
    int src_r = std::max(0, (in.h - th) / 2);
    int src_c = std::max(0, (in.w - tw) / 2);
    int dst_r = std::max(0, (th - in.h) / 2);
    int dst_c = std::max(0, (tw - in.w) / 2);
    int copy_h = std::min(in.h, th);
    int copy_w = std::min(in.w, tw);
    for (int r = 0; r < copy_h; ++r)
        for (int c = 0; c < copy_w; ++c) out.at(dst_r + r, dst_c + c) = in.at(src_r + r, src_c + c);
    return out;
}

}  // namespace jigsaw
