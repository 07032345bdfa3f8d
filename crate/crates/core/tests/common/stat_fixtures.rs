#![allow(clippy::approx_constant)] // frozen sample data, not constants
// Reference values computed with scipy.stats (spearmanr, kruskal) and numpy;
// regenerate only if the fixtures change.

pub const COHEN: &[(&[f64], &[f64], f64)] = &[
    (&[5.92, 3.38, 8.72, 2.08, 4.49, 7.09, 8.21, 5.3, 7.78, 2.44, 1.04, 0.24, 4.61, 6.68, 4.76, 4.55, 2.59, 5.36, 3.14, 2.92], &[5.98, 6.02, 4.27, 4.17, 5.91, 4.79, 5.43, 4.9, 5.05, 5.01, 2.03, 6.11, 3.21, 1.96, 2.94, 5.04, 4.63, 5.57, 2.34, 2.83, 6.0, 3.27, 2.34], 0.11771196122968),
    (&[2.14, 3.35, 4.81, 4.06, 5.41, 6.46, 4.2, 7.16, 4.39, 6.85, 6.04, 1.88, 3.22, 4.21, 1.5, 2.87, 5.49, 5.81, 2.74, 6.32, 2.78], &[3.49, 3.31, 4.71, 4.0, 2.85, 0.5, 4.33], 0.6397988715330435),
    (&[6.63, 6.21, 5.34, 4.62, 8.16, 3.91, 2.48, 4.4, 3.07, 4.29, 3.88, 7.94, 4.9, 7.83, 6.27, 3.12, 3.14, 4.51, 2.95, 5.61, 4.8, 5.63, 4.22, 4.2, 5.71, 8.89, 2.13, 1.33, 3.72], &[2.79, 2.95, 4.42, 4.02, 3.5, 4.13, 4.18, 3.78, 3.48, 4.89, 3.56, 6.28, 1.81, 1.39, 4.82, 4.57, 2.89, 5.53, 1.32, 4.63, 4.71], 0.6252301000416007),
    (&[3.98, 7.02, 4.81, 2.62, 1.44, 5.81, 4.5, 1.95, 4.46, 6.95, 8.51, 4.91, 4.83, 3.14, 5.51, 1.31, 4.32, 4.51, 3.84, 0.72, 3.24, 2.51, 3.59, 3.5], &[3.7, 4.45, 5.44, 4.95, 1.17, 1.1, 4.71, 3.07, 0.2, 4.62, 4.09, 0.9, 7.47, 2.01], 0.33839917747063536),
    (&[5.56, 4.05, 4.61, 9.76, 5.24, 3.48, 5.29, 3.99, 6.69, 5.38, 7.38, 7.29, 6.94, 6.46, 4.62, 3.76, 6.83, 6.47, 7.81, 2.89, 6.16, 3.34, 5.88, 1.79, 5.51, 5.47, 9.09], &[4.28, 4.31, 3.67, 4.18, 3.95, 2.59, 5.46, 5.02, 4.83, 1.35, 4.57, 1.71, 4.63], 1.0278306857879607),
    (&[5.53, 5.08, 8.82, 0.32, 2.56, 3.97, 5.82, 5.8, 4.64, 4.22], &[4.11, 3.33, 3.13, 5.07, 5.47, 3.11, 4.5, 2.57, 4.73, 3.48], 0.422350710165755),
    (&[5.02, 6.79, 3.84, 3.27, 6.0, 8.66, 7.67, 4.09, 3.93, 6.29, 2.11, 1.92, -0.54, 7.1, 0.94, 5.8, 3.35, 6.71, 3.51, 7.01, 6.96, 2.64, 5.75, 11.09], &[4.71, 3.98, 5.74], 0.07287401729568571),
    (&[6.4, 4.81, 1.44, 4.75, 7.05, 6.86, 6.59, 6.95, 4.67, 5.78, 3.56, 3.57, 1.98, 5.83, 1.67, 7.82, 7.87, 2.63, 6.52, 10.67], &[3.51, 3.57, 4.74, 3.58, 4.67, 3.2, 5.52, 4.86, 5.28], 0.5089054551880824),
    (&[4.18, 3.63, 2.04, 6.05, 4.21, 4.79, 2.74, 5.26, 2.86, 5.4, 4.36], &[3.05, 4.48, 5.21, 4.76, 4.98, 1.0, 1.49, 5.13, 3.9, 5.99, 4.61, 4.78, 1.93, 2.39, 2.3, 3.32, 4.01, 5.66], 0.21720311764388853),
    (&[4.17, 6.25, 3.66, 3.56, 6.5, 6.6, 7.73, 5.01, 6.31, 4.06, 5.71, 4.47, 3.66, 8.59, 4.27, 3.88, 7.24, 3.75, 7.11, 1.39, 5.77, 4.71, 5.57, 2.11, 8.08, 5.03, 2.73, 5.64], &[4.73, 4.2, 5.09, 4.74, 3.34, 5.79, 6.57, 2.47, 5.2], 0.26599415910302115),
];

pub const SPEARMAN: &[(&[f64], &[f64], f64, f64)] = &[
    (&[1.0, 2.0, 2.0, 4.0], &[10.0, 20.0, 30.0, 40.0], 0.9486832980505139, 0.05131670194948612),
    (&[0.9, -0.7, -0.5, 0.3, -0.0, -1.9, -0.2, 0.7, 0.5, 0.6, -1.8, 0.1, -0.3, -1.0, 1.6, -1.9, 1.3, 0.1, -0.8, -0.4, 0.7, -2.2, 0.3, 0.3, -1.2], &[-1.5, -1.2, 0.6, -1.7, -1.3, 0.3, -0.7, 0.1, -0.6, 0.7, 0.7, -0.5, -0.1, 0.3, 0.3, 1.1, 0.5, 0.5, 1.0, 0.6, -0.6, -0.5, -0.0, -0.4, 0.4], -0.30999230702079517, 0.1315439221258601),
    (&[1.4, 1.2, -0.2, -0.5, 1.8, -0.6], &[-1.5, -0.1, 2.1, 0.8, -0.3, 1.1], -0.7714285714285715, 0.07239650145772594),
    (&[-0.1, -2.4, 0.8, -0.0, 2.0, 1.9, 2.0, -0.9, -1.6, 1.1, 0.1, -1.9, 0.5, 0.6, 2.9, -0.3, 0.9, -0.6], &[-0.7, 0.6, -1.2, 1.7, 0.6, 0.9, -3.1, 1.4, 0.8, -1.4, -0.7, -0.0, -0.4, 1.1, -2.5, -0.0, -0.7, -1.1], -0.4272412043904146, 0.07699155055810837),
    (&[1.2, 2.3, -1.6, -0.6, -0.6, 0.5, -0.6, -0.6, 0.1, 1.2, -0.7, 0.0, -0.0, 2.0, -0.7, 1.9, 0.4, 0.9, 0.3, -2.1, 0.3, -0.4, -1.6, 0.2, -0.3, -0.9, 0.0, 0.7, 0.0, 0.9, 0.6, -1.1, 1.3, -0.3, 1.0], &[0.2, -0.8, 2.5, 1.5, -1.5, -0.2, -0.4, 1.8, -2.2, -1.3, 1.8, 0.7, -1.4, -2.0, -0.0, 0.0, -1.2, -1.5, -0.4, 2.2, 0.8, 0.2, 0.6, 0.3, -2.1, -0.1, -1.0, -1.3, 1.6, -1.5, 0.3, 1.1, -1.0, -0.9, -0.1], -0.49655971189833076, 0.002412412994340254),
    (&[-1.8, 1.2, -1.0, 0.5, 1.3, 0.2, 1.1, 0.3, -1.5, -0.8, -1.1, 0.2, -0.4, 0.0, 0.7, -0.2, 0.8, 0.6, -1.5, -0.1, -0.2, -1.5, -0.4, -1.7, 0.4, 0.4, -0.2, -1.0, -1.2, 1.0, 0.8, -2.3, -1.0, 0.4, -0.3, 0.4, -0.1, 0.1], &[2.0, -0.5, -0.7, -0.7, -0.1, -0.5, 0.3, 1.1, 2.1, -0.2, -1.0, -0.8, -0.5, 1.2, 1.3, 0.4, -1.5, -0.7, 1.4, 0.2, -0.6, 1.6, 1.0, -0.3, -1.1, 0.7, -0.5, 1.6, 1.9, 0.1, -0.1, 1.1, 1.8, -1.1, -1.3, -0.6, -1.1, -0.4], -0.3960504757982248, 0.013837689853963643),
    (&[-0.8, 3.1, -0.7, -0.2, -1.8, -0.2, -1.9, 0.2, -0.7, 0.2, 1.1, 2.0, -0.9, -1.2, 0.7, 0.4, 0.6, -1.7, -0.5], &[1.2, 1.0, -1.2, -1.4, 0.1, 0.4, 1.1, -1.8, 0.6, -1.5, -1.7, -1.6, -0.2, 1.0, 1.3, -1.3, 0.5, 1.4, -0.1], -0.4042180822497769, 0.08607596159912499),
    (&[0.1, 0.6, -0.3, 1.3, 0.7, 0.0, -0.3, -0.4, -0.1, -0.2, 0.3, 1.5, -0.4, 1.1, 0.7, -1.2, -0.6, -0.4, 0.0, -0.0, 1.3, -0.4, 1.2, 0.4, -1.1], &[-0.1, 0.1, 1.2, -0.6, -0.4, 0.3, 1.5, -1.0, -0.5, -1.1, 1.0, -0.3, 0.0, -2.0, -0.3, -0.0, 0.3, 0.1, 0.6, -0.3, 0.5, -0.2, -0.1, 0.1, 0.7], -0.27668232075248156, 0.180603539862842),
    (&[-0.2, 0.4, -0.7, -0.4, 0.5, 0.2, -0.2], &[0.2, -0.2, 1.2, -1.0, 1.3, -0.5, 0.3], 0.16216874328520064, 0.7282995630820223),
    (&[1.6, 0.5, 1.0, 1.3, -1.4, 0.5, -0.6, 0.0, -0.6, 0.2, 1.7, -0.0, 0.4, 1.3, -0.6, 0.4, 0.0, -0.9, 1.3, -0.8, 0.8, 1.9, -0.5, -0.6, -0.2, 0.6, 0.4, -1.3, -0.3, 0.2, 1.2, -0.7, 0.5, 0.6, -0.4, -0.9], &[-1.1, -0.2, -1.7, 0.3, 1.0, -1.4, 0.1, -0.6, 0.1, -0.9, -1.4, -0.1, -1.6, -0.1, 1.6, 1.0, 1.1, -1.5, -0.8, 2.1, -0.0, -0.2, -0.1, 0.5, -0.8, -0.9, 0.7, -0.8, 0.4, -0.9, 0.9, 1.1, -0.3, -1.3, -1.0, -0.1], -0.3534995099970067, 0.03443281133974476),
];

pub const KRUSKAL: &[(&[&[f64]], f64, f64)] = &[
    (&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]], 7.200000000000003, 0.02732372244729252),
    (&[&[0.2, -1.3, 1.6, -2.0, -0.7], &[1.1, -1.3, 0.6, 0.3, -0.3], &[1.7, 0.6, 0.1, 1.1, -0.5, -0.4, 1.7, 1.6, 0.6, -0.1, -1.1, 1.8]], 3.0517300056721424, 0.2174328954256774),
    (&[&[-1.1, -1.9, -0.1], &[-1.3, 1.4, 0.7], &[1.5, -0.2, 0.8, 1.0, 1.2, 3.5, 1.0, 1.0, 0.7], &[0.6, 0.4, 0.1, 2.5, 2.4]], 6.571371069182391, 0.08688990402226873),
    (&[&[-1.1, 1.2, -1.7, -0.1, -0.9, 0.3, 2.1, -0.2, 1.2], &[0.8, -1.0, -0.5, 2.0, 0.8, -0.5]], 0.013963694394578076, 0.9059344836565544),
    (&[&[-1.1, -0.7, -0.5, -1.5, -1.6, -0.8, -0.2, -1.4, -0.9, 2.0], &[-1.2, 0.8, 1.4, 0.8, -1.0, -0.6, -0.3, 1.0, -1.3, -0.9, -2.2, 0.4, 1.8]], 1.3176481777371851, 0.2510145657728605),
    (&[&[0.2, 0.4, 1.4, -1.8, -1.1, -0.5, -0.3, 0.2, -1.1, 0.4, 0.0, 0.1], &[-2.3, 1.1], &[0.5, -0.8, 1.2], &[-1.0, 2.2, 1.8, 1.8, 2.3, 1.1, 1.6, 1.3]], 9.650674373795766, 0.021781300189094452),
    (&[&[0.3, 0.9, 0.4, 0.2, 0.1, 0.0, 1.3, 1.7, -0.2, 0.3, -0.0, 0.3, 1.4, 1.6], &[1.9, -0.6, 0.6, -0.6, 0.7, 0.7], &[2.2, -0.1, 1.5], &[2.0, 0.4, 1.8, 2.6, 0.3, 0.6, 1.6, -0.0]], 2.904704079567461, 0.4065524976452166),
    (&[&[-0.5, 0.9, -2.1, 0.4, -0.8, -1.2, -0.8], &[2.2, 0.5, 0.5, -0.5, -0.8, 0.6, 1.0, 0.0, -0.0, 1.7, -0.5, -0.4, 2.1, 1.1], &[-0.3, 0.3, 0.9, 1.0, 1.1, 0.2], &[0.3, 0.8, -0.6, 1.1, -0.1, 2.2, 1.1, 0.6, 2.3, 1.1]], 8.728644549118316, 0.03312497328256159),
    (&[&[0.0, 0.4, 0.7, -0.1, -0.9, 0.1, -1.5, 0.7, -0.4, 0.1], &[1.7, 1.5], &[1.7, -1.8, 0.3, 2.0], &[2.0, 1.3, 2.1, 1.7, 1.4]], 10.48956294846706, 0.014831865075402802),
    (&[&[-0.8, -0.9, -0.1, -0.6, -2.0, -0.8], &[0.8, 0.5], &[0.4, 1.8, 1.0, 1.4, -0.0, 1.4, 1.3, 0.5, 0.3, -0.9, 2.5, 0.6, 1.6, -0.7], &[-0.4, -0.0, 1.2, 0.7, 1.4, 0.9, -0.2]], 10.940852254030938, 0.0120500472479175),
];
