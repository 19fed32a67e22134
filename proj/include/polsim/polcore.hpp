// SPDX-License-Identifier: Apache-2.0
//
// polsim - link-level simulator for dual-polarized RIS polarization shift keying
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POLSIM_POLCORE_HPP
#define POLSIM_POLCORE_HPP

#include <cmath>
#include <complex>
#include <numbers>

namespace polsim {

using cplx = std::complex<double>;

/// A data bit. Vertical polarization encodes 1, horizontal encodes 0.
using Bit = bool;

/// Complex 2-vector over the two orthogonal polarization components.
/// Depending on context it holds a dual-polarized field, a composite
/// channel, a received sample or an equalized sample.
struct Jones2 {
    cplx v{}; ///< vertical / first component
    cplx h{}; ///< horizontal / second component

    double norm2() const { return std::norm(v) + std::norm(h); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Jones2 operator+(const Jones2 &a, const Jones2 &b) { return {a.v + b.v, a.h + b.h}; }
inline Jones2 operator-(const Jones2 &a, const Jones2 &b) { return {a.v - b.v, a.h - b.h}; }
inline Jones2 operator*(const cplx &s, const Jones2 &a) { return {s * a.v, s * a.h}; }
inline Jones2 operator*(double s, const Jones2 &a) { return {s * a.v, s * a.h}; }

/// conj(a) . b
inline cplx cdot(const Jones2 &a, const Jones2 &b)
{
    return std::conj(a.v) * b.v + std::conj(a.h) * b.h;
}

/// Complex 2x2 matrix, row-major.
struct Mat2c {
    cplx a11{}, a12{}, a21{}, a22{};

    Jones2 operator*(const Jones2 &x) const
    {
        return {a11 * x.v + a12 * x.h, a21 * x.v + a22 * x.h};
    }

    Mat2c operator*(const Mat2c &o) const
    {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    Mat2c transpose() const { return {a11, a21, a12, a22}; }

    static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Mat2c operator*(const cplx &s, const Mat2c &m)
{
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

/// Azimuth rotation between the reflected wave's polarization basis and the
/// receiver's V/H basis. Any finite value is legal; canonical() reports the
/// equivalent angle in [0, pi).
struct MismatchAngle {
    double rad = 0.0;

    static MismatchAngle from_degrees(double deg)
    {
        return {deg * std::numbers::pi / 180.0};
    }

    double canonical() const
    {
        double r = std::fmod(rad, std::numbers::pi);
        if (r < 0.0)
            r += std::numbers::pi;
        return r;
    }
};

/// Polarization state of a reflected wave, selected by the per-element
/// phase difference.
enum class PolKind { Vertical, Horizontal, RightCircular, LeftCircular, Elliptical };

/// Wraps a phase into (-pi, pi].
inline double wrap_phase(double rad)
{
    double r = std::remainder(rad, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r = std::numbers::pi;
    return r;
}

/// Polarization mismatch loss matrix of the dual-polarized receiver,
/// [[cos b, sin b], [-sin b, cos b]]. Real-valued and orthogonal.
inline Mat2c mismatch_matrix(MismatchAngle beta)
{
    const double c = std::cos(beta.rad);
    const double s = std::sin(beta.rad);
    return {c, s, -s, c};
}

/// Reflected-wave state of one element as a function of its phase
/// difference: (1/2) [1 + e^{j dphi}, 1 - e^{j dphi}]. Unit norm for
/// every dphi.
inline Jones2 element_jones(double delta_phi)
{
    const cplx e = std::polar(1.0, delta_phi);
    return {0.5 * (1.0 + e), 0.5 * (1.0 - e)};
}

/// Maps a phase difference to the polarization state it excites.
/// dphi = 0 -> vertical, pi -> horizontal, +-pi/2 -> circular, anything
/// else elliptical. Comparison is modulo 2 pi within tol.
inline PolKind classify_polarization(double delta_phi, double tol = 1e-9)
{
    const double d = wrap_phase(delta_phi);
    const double pi = std::numbers::pi;
    if (std::abs(d) <= tol)
        return PolKind::Vertical;
    if (std::abs(d - pi) <= tol || std::abs(d + pi) <= tol)
        return PolKind::Horizontal;
    if (std::abs(d - 0.5 * pi) <= tol)
        return PolKind::RightCircular;
    if (std::abs(d + 0.5 * pi) <= tol)
        return PolKind::LeftCircular;
    return PolKind::Elliptical;
}

} // namespace polsim

#endif
