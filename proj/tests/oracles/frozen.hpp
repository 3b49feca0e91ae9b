#ifndef REGCERT_TESTS_FROZEN_HPP
#define REGCERT_TESTS_FROZEN_HPP

// Generated by gen_frozen.py (mpmath, 40 digits). Do not edit.

namespace frozen {

struct LogGammaPoint {
    double re, im, lg_re, lg_im;
};

inline constexpr LogGammaPoint kLogGamma[] = {
    {0.5, 0, 0.57236494292470008707, 0.0},
    {1, 1, -0.65092319930185633889, -0.30164032046753319789},
    {2.5, 10, -10.171480804189498604, 15.972764345169443077},
    {-3.7, 0.2, -1.6364330925624564172, -12.663282679635771969},
    {0.1, 1000, -1572.6404903672848005, 5907.1269221180836573},
    {30, -40, 49.232808494070298819, -143.83479582266482462},
    {-0.5, -7, -12.025090438168652537, -4.9852267654119522785},
    {7.25, 0.001, 7.0521853767989231335, 0.0019104535305218947604},
    {0.001, 0, 6.9071788853838536617, 0.0},
    {3, 10000.0, -15684.018478460821063, 82107.330402245484266},
};

inline constexpr double kG_4_over_d3 = 8.5631063672641642614;
inline constexpr double kG_e_minus20 = 6.6476876109899864365;
inline constexpr double kG_1e_minus3 = 0.00066503449730587584557;
inline constexpr double kG_e_minus25_sig_3_2 = 4.8066874690093814802;
inline constexpr double kBigG_3030000_e20_N1 = 0.80841018362594908205;
inline constexpr double kBigG_e20_e28_N3 = 6.6778667398356855559;
inline constexpr double kBigG_e20_e28_N1 = 6.6476876109899864365;
inline constexpr double kBigG_e28_e31_N3 = 1.6285776121825760073;
inline constexpr double kBigG_e31_e314_N3 = 2.0977945605209582895;
inline constexpr double kBigG_e314_e31492_N3 = 1.7555886128792283461;
inline constexpr double kBigG_row1_N3 = 0.69561062198405831796;

} // namespace frozen

#endif
