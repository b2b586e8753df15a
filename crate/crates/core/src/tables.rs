//! Registry of the published coverage studies: each table's scenario and its
//! reported numbers, used as golden regression targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::covariance::{Bandwidth, ScaleFn, SigmaSpec, SigmaVariant};
use crate::simulation::{ErrorDesign, ScenarioConfig, SlopeDesign, StudyGrid};

/// Sample sizes of every published table.
pub const TABLE_NS: [usize; 2] = [100, 500];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    A7,
    A8,
    A9,
    A10,
    A11,
    A12,
    A13,
    A14,
    A15,
    A16,
}

impl TableId {
    pub const ALL: [TableId; 16] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::A7,
        TableId::A8,
        TableId::A9,
        TableId::A10,
        TableId::A11,
        TableId::A12,
        TableId::A13,
        TableId::A14,
        TableId::A15,
        TableId::A16,
    ];

    pub fn number(self) -> usize {
        TableId::ALL.iter().position(|t| *t == self).unwrap() + 1
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTable(pub String);

impl fmt::Display for UnknownTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnknownTable: `{}` (expected T1..T6 or A7..A16)", self.0)
    }
}

impl std::error::Error for UnknownTable {}

impl FromStr for TableId {
    type Err = UnknownTable;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .iter()
            .copied()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownTable(s.to_string()))
    }
}

/// Reported statistics of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Published {
    pub cov_feasible: f64,
    pub len_feasible: f64,
    pub cov_infeasible: f64,
    pub len_infeasible: f64,
}

#[derive(Debug, Clone, Copy)]
struct Row {
    t: usize,
    n100: [f64; 4],
    n500: [f64; 4],
}

const fn row(t: usize, n100: [f64; 4], n500: [f64; 4]) -> Row {
    Row { t, n100, n500 }
}

#[derive(Debug, Clone)]
pub struct TableSpec {
    pub id: TableId,
    pub title: &'static str,
    pub base: ScenarioConfig,
    pub ts: Vec<usize>,
    rows: &'static [Row],
    /// `(N, T)` cells whose published numbers are internally inconsistent.
    excluded: &'static [(usize, usize)],
}

impl TableSpec {
    pub fn grid(&self, reps: usize, seed: u64) -> StudyGrid {
        StudyGrid {
            base: ScenarioConfig {
                reps,
                seed,
                ..self.base.clone()
            },
            ns: TABLE_NS.to_vec(),
            ts: self.ts.clone(),
        }
    }

    /// Scenario for a single cell.
    pub fn cell(&self, n: usize, t_len: usize, reps: usize, seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            n,
            t_len,
            reps,
            seed,
            ..self.base.clone()
        }
    }

    pub fn published(&self, n: usize, t_len: usize) -> Option<Published> {
        let r = self.rows.iter().find(|r| r.t == t_len)?;
        let v = match n {
            100 => r.n100,
            500 => r.n500,
            _ => return None,
        };
        Some(Published {
            cov_feasible: v[0],
            len_feasible: v[1],
            cov_infeasible: v[2],
            len_infeasible: v[3],
        })
    }

    /// Published value usable as a regression target.
    pub fn golden(&self, n: usize, t_len: usize) -> Option<Published> {
        if self.excluded.contains(&(n, t_len)) {
            return None;
        }
        self.published(n, t_len)
    }
}

fn banded(b: Bandwidth) -> SigmaSpec {
    SigmaSpec::new(SigmaVariant::Banded { bandwidth: b })
}

pub fn table(id: TableId) -> TableSpec {
    use TableId::*;
    let homogeneous = SlopeDesign::Homogeneous { value: 1.0 };
    let split = SlopeDesign::HalfSplit { lo: 1.0, hi: 2.0 };
    let slopes = if id.number() % 2 == 1 {
        homogeneous
    } else {
        split
    };
    let one = Bandwidth::Fixed(1);
    let (title, errors, spec, fixed_effects, rows, excluded): (
        _,
        _,
        _,
        _,
        &'static [Row],
        &'static [(usize, usize)],
    ) = match id {
        T1 => (
            "homogeneous slopes",
            ErrorDesign::IidNormal,
            banded(one),
            false,
            T1_ROWS,
            &[],
        ),
        T2 => (
            "heterogeneous slopes",
            ErrorDesign::IidNormal,
            banded(one),
            false,
            T2_ROWS,
            &[],
        ),
        T3 => (
            "homogeneous slopes, AR(1) errors phi=0.3",
            ErrorDesign::Ar1 { phi: 0.3 },
            banded(Bandwidth::Auto),
            false,
            T3_ROWS,
            &[],
        ),
        T4 => (
            "heterogeneous slopes, AR(1) errors phi=0.3",
            ErrorDesign::Ar1 { phi: 0.3 },
            banded(Bandwidth::Auto),
            false,
            T4_ROWS,
            &[],
        ),
        T5 => (
            "homogeneous slopes, individual fixed effects",
            ErrorDesign::IidNormal,
            banded(one),
            true,
            T5_ROWS,
            &[],
        ),
        T6 => (
            "heterogeneous slopes, individual fixed effects",
            ErrorDesign::IidNormal,
            banded(one),
            true,
            T6_ROWS,
            &[],
        ),
        A7 => (
            "homogeneous slopes, heteroskedastic errors",
            ErrorDesign::Hetero,
            banded(one),
            false,
            A7_ROWS,
            &[],
        ),
        A8 => (
            "heterogeneous slopes, heteroskedastic errors",
            ErrorDesign::Hetero,
            banded(one),
            false,
            A8_ROWS,
            &[],
        ),
        A9 => (
            "homogeneous slopes, heteroskedastic errors, scaled estimator",
            ErrorDesign::Hetero,
            hetero_scaled(),
            false,
            A9_ROWS,
            &[],
        ),
        A10 => (
            "heterogeneous slopes, heteroskedastic errors, scaled estimator",
            ErrorDesign::Hetero,
            hetero_scaled(),
            false,
            A10_ROWS,
            &[],
        ),
        A11 => (
            "homogeneous slopes, AR(1) errors phi=0.5",
            ErrorDesign::Ar1 { phi: 0.5 },
            banded(Bandwidth::Auto),
            false,
            A11_ROWS,
            &[],
        ),
        A12 => (
            "heterogeneous slopes, AR(1) errors phi=0.5",
            ErrorDesign::Ar1 { phi: 0.5 },
            banded(Bandwidth::Auto),
            false,
            A12_ROWS,
            &[],
        ),
        A13 => (
            "homogeneous slopes, AR(1) errors phi=0.5, parametric estimator",
            ErrorDesign::Ar1 { phi: 0.5 },
            SigmaSpec::new(SigmaVariant::Ar1Parametric),
            false,
            A13_ROWS,
            &[(100, 20), (500, 20)],
        ),
        A14 => (
            "heterogeneous slopes, AR(1) errors phi=0.5, parametric estimator",
            ErrorDesign::Ar1 { phi: 0.5 },
            SigmaSpec::new(SigmaVariant::Ar1Parametric),
            false,
            A14_ROWS,
            &[(100, 20), (500, 20)],
        ),
        A15 => (
            "homogeneous slopes, heteroskedastic AR(1) errors, HAC estimator",
            ErrorDesign::HeteroAr1 { phi: 0.3 },
            SigmaSpec::new(SigmaVariant::Hac {
                bandwidth: Bandwidth::Auto,
            }),
            false,
            A15_ROWS,
            &[],
        ),
        A16 => (
            "heterogeneous slopes, heteroskedastic AR(1) errors, HAC estimator",
            ErrorDesign::HeteroAr1 { phi: 0.3 },
            SigmaSpec::new(SigmaVariant::Hac {
                bandwidth: Bandwidth::Auto,
            }),
            false,
            A16_ROWS,
            &[],
        ),
    };
    let base = ScenarioConfig {
        slope_design: slopes,
        error_design: errors,
        fixed_effects,
        sigma_spec: spec.with_demean_adjust(fixed_effects),
        ..ScenarioConfig::new(id.to_string(), TABLE_NS[0], rows[0].t)
    };
    TableSpec {
        id,
        title,
        base,
        ts: rows.iter().map(|r| r.t).collect(),
        rows,
        excluded,
    }
}

fn hetero_scaled() -> SigmaSpec {
    SigmaSpec::new(SigmaVariant::HeteroScaled {
        scale: ScaleFn::AbsComponent { component: 0 },
        inner: Box::new(SigmaVariant::Banded {
            bandwidth: Bandwidth::Fixed(1),
        }),
    })
}

const T1_ROWS: &[Row] = &[
    row(
        10,
        [0.9922, 1.6420, 0.9498, 0.9006],
        [0.9890, 1.2841, 0.9530, 0.7388],
    ),
    row(
        15,
        [0.9972, 0.8861, 0.9572, 0.4983],
        [0.9968, 0.3134, 0.9510, 0.1755],
    ),
    row(
        20,
        [0.9980, 0.4761, 0.9566, 0.2701],
        [0.9982, 0.1905, 0.9502, 0.1075],
    ),
    row(
        25,
        [0.9988, 0.3169, 0.9580, 0.1802],
        [0.9974, 0.1454, 0.9518, 0.0826],
    ),
    row(
        30,
        [0.9982, 0.2660, 0.9514, 0.1517],
        [0.9992, 0.1084, 0.9488, 0.0617],
    ),
    row(
        40,
        [0.9990, 0.1820, 0.9518, 0.1038],
        [0.9986, 0.0741, 0.9526, 0.0424],
    ),
    row(
        60,
        [0.9990, 0.1046, 0.9538, 0.0600],
        [0.9986, 0.0482, 0.9480, 0.0276],
    ),
    row(
        80,
        [0.9990, 0.0794, 0.9474, 0.0456],
        [0.9988, 0.0339, 0.9512, 0.0195],
    ),
];

const T2_ROWS: &[Row] = &[
    row(
        10,
        [0.9652, 3.0652, 0.9536, 2.7388],
        [0.9732, 1.7765, 0.9524, 1.4231],
    ),
    row(
        15,
        [0.9608, 2.1541, 0.9542, 2.0317],
        [0.9604, 0.8114, 0.9512, 0.7689],
    ),
    row(
        20,
        [0.9660, 1.5388, 0.9598, 1.4877],
        [0.9552, 0.6446, 0.9466, 0.6250],
    ),
    row(
        25,
        [0.9564, 1.3201, 0.9554, 1.2948],
        [0.9556, 0.5575, 0.9494, 0.5444],
    ),
    row(
        30,
        [0.9598, 1.1893, 0.9568, 1.1693],
        [0.9528, 0.4808, 0.9494, 0.4725],
    ),
    row(
        40,
        [0.9596, 0.9772, 0.9568, 0.9668],
        [0.9556, 0.3978, 0.9536, 0.3931],
    ),
    row(
        60,
        [0.9602, 0.7370, 0.9590, 0.7324],
        [0.9514, 0.3186, 0.9490, 0.3161],
    ),
    row(
        80,
        [0.9538, 0.6435, 0.9528, 0.6403],
        [0.9526, 0.2699, 0.9486, 0.2684],
    ),
];

const T3_ROWS: &[Row] = &[
    row(
        10,
        [0.9760, 2.8087, 0.9506, 1.6053],
        [0.9298, 1.5023, 0.9510, 0.8435],
    ),
    row(
        15,
        [0.9792, 1.1745, 0.9562, 0.6975],
        [0.8740, 0.5415, 0.9512, 0.3168],
    ),
    row(
        20,
        [0.9910, 0.7589, 0.9600, 0.4471],
        [0.9102, 0.3393, 0.9554, 0.1998],
    ),
    row(
        25,
        [0.9942, 0.5597, 0.9622, 0.3298],
        [0.9424, 0.2485, 0.9514, 0.1460],
    ),
    row(
        30,
        [0.9958, 0.4463, 0.9576, 0.2627],
        [0.9594, 0.1961, 0.9522, 0.1152],
    ),
    row(
        40,
        [0.9980, 0.3149, 0.9574, 0.1852],
        [0.9782, 0.1390, 0.9502, 0.0816],
    ),
    row(
        60,
        [0.9994, 0.1988, 0.9574, 0.1167],
        [0.9918, 0.0880, 0.9536, 0.0515],
    ),
    row(
        80,
        [0.9992, 0.1444, 0.9538, 0.0843],
        [0.9962, 0.0647, 0.9526, 0.0378],
    ),
];

// Published values; some happen to resemble library constants.
#[allow(clippy::approx_constant)]
const T4_ROWS: &[Row] = &[
    row(
        10,
        [0.9592, 4.1472, 0.9494, 3.5791],
        [0.9366, 2.0391, 0.9480, 1.6667],
    ),
    row(
        15,
        [0.9494, 2.4120, 0.9516, 2.3537],
        [0.9184, 1.0872, 0.9482, 1.0488],
    ),
    row(
        20,
        [0.9512, 1.9234, 0.9536, 1.9169],
        [0.9332, 0.8457, 0.9500, 0.8415],
    ),
    row(
        25,
        [0.9494, 1.6337, 0.9504, 1.6393],
        [0.9334, 0.7218, 0.9494, 0.7243],
    ),
    row(
        30,
        [0.9534, 1.4501, 0.9560, 1.4603],
        [0.9392, 0.6382, 0.9492, 0.6427],
    ),
    row(
        40,
        [0.9498, 1.2086, 0.9548, 1.2217],
        [0.9422, 0.5380, 0.9508, 0.5434],
    ),
    row(
        60,
        [0.9486, 0.9627, 0.9522, 0.9749],
        [0.9454, 0.4291, 0.9482, 0.4343],
    ),
    row(
        80,
        [0.9554, 0.8286, 0.9586, 0.8364],
        [0.9466, 0.3674, 0.9516, 0.3709],
    ),
];

const T5_ROWS: &[Row] = &[
    row(
        10,
        [0.8386, 5.0807, 0.9562, 3.3365],
        [0.3550, 2.4451, 0.9464, 1.5662],
    ),
    row(
        15,
        [0.9790, 1.4493, 0.9620, 0.8762],
        [0.7832, 0.6764, 0.9480, 0.4065],
    ),
    row(
        20,
        [0.9910, 0.9164, 0.9522, 0.5432],
        [0.9422, 0.4005, 0.9576, 0.2373],
    ),
    row(
        25,
        [0.9944, 0.6681, 0.9534, 0.3937],
        [0.9742, 0.2821, 0.9508, 0.1658],
    ),
    row(
        30,
        [0.9988, 0.4909, 0.9570, 0.2872],
        [0.9872, 0.2171, 0.9528, 0.1271],
    ),
    row(
        40,
        [0.9990, 0.3455, 0.9568, 0.2015],
        [0.9940, 0.1513, 0.9496, 0.0881],
    ),
    row(
        60,
        [0.9990, 0.2076, 0.9596, 0.1209],
        [0.9976, 0.0941, 0.9464, 0.0546],
    ),
    row(
        80,
        [0.9996, 0.1485, 0.9482, 0.0862],
        [0.9992, 0.0678, 0.9564, 0.0393],
    ),
];

const T6_ROWS: &[Row] = &[
    row(
        10,
        [0.8894, 8.5260, 0.9544, 7.7738],
        [0.6284, 4.8723, 0.9494, 3.9320],
    ),
    row(
        15,
        [0.9522, 4.3905, 0.9540, 4.1887],
        [0.9002, 1.9939, 0.9504, 1.8926],
    ),
    row(
        20,
        [0.9510, 3.1799, 0.9496, 3.0716],
        [0.9446, 1.4991, 0.9512, 1.4498],
    ),
    row(
        25,
        [0.9560, 2.8129, 0.9520, 2.7550],
        [0.9514, 1.2308, 0.9538, 1.2063],
    ),
    row(
        30,
        [0.9556, 2.3995, 0.9532, 2.3718],
        [0.9500, 1.0865, 0.9468, 1.0696],
    ),
    row(
        40,
        [0.9562, 1.9759, 0.9558, 1.9589],
        [0.9482, 0.8913, 0.9474, 0.8818],
    ),
    row(
        60,
        [0.9518, 1.5410, 0.9524, 1.5321],
        [0.9504, 0.7028, 0.9488, 0.6984],
    ),
    row(
        80,
        [0.9492, 1.3044, 0.9490, 1.3010],
        [0.9512, 0.5944, 0.9518, 0.5918],
    ),
];

const A7_ROWS: &[Row] = &[
    row(
        10,
        [0.9784, 1.8746, 0.9528, 1.0744],
        [0.9894, 1.2405, 0.9556, 0.6154],
    ),
    row(
        15,
        [0.9982, 1.0523, 0.9618, 0.5985],
        [0.9384, 0.3662, 0.9530, 0.2125],
    ),
    row(
        20,
        [0.9980, 0.5339, 0.9526, 0.3119],
        [0.9004, 0.2304, 0.9480, 0.1375],
    ),
    row(
        25,
        [0.9970, 0.3806, 0.9600, 0.2265],
        [0.8808, 0.1706, 0.9528, 0.1037],
    ),
    row(
        30,
        [0.9984, 0.3196, 0.9598, 0.1888],
        [0.8450, 0.1288, 0.9500, 0.0776],
    ),
    row(
        40,
        [0.9982, 0.2112, 0.9560, 0.1266],
        [0.8028, 0.0886, 0.9524, 0.0543],
    ),
    row(
        60,
        [0.9956, 0.1256, 0.9588, 0.0772],
        [0.7430, 0.0570, 0.9458, 0.0352],
    ),
    row(
        80,
        [0.9982, 0.0961, 0.9556, 0.0586],
        [0.7596, 0.0406, 0.9508, 0.0253],
    ),
    row(
        100,
        [0.9986, 0.0720, 0.9506, 0.0434],
        [0.7876, 0.0318, 0.9482, 0.0196],
    ),
];

const A8_ROWS: &[Row] = &[
    row(
        10,
        [0.9604, 3.2795, 0.9568, 2.9978],
        [0.9762, 1.7721, 0.9516, 1.3960],
    ),
    row(
        15,
        [0.9590, 2.3875, 0.9494, 2.2371],
        [0.9340, 0.8704, 0.9486, 0.8548],
    ),
    row(
        20,
        [0.9620, 1.6265, 0.9610, 1.6196],
        [0.9324, 0.6993, 0.9462, 0.7105],
    ),
    row(
        25,
        [0.9510, 1.4247, 0.9530, 1.4429],
        [0.9348, 0.5981, 0.9494, 0.6109],
    ),
    row(
        30,
        [0.9598, 1.2904, 0.9594, 1.2895],
        [0.9348, 0.5151, 0.9532, 0.5331],
    ),
    row(
        40,
        [0.9530, 1.0263, 0.9594, 1.0592],
        [0.9354, 0.4279, 0.9532, 0.4456],
    ),
    row(
        60,
        [0.9560, 0.7980, 0.9608, 0.8282],
        [0.9318, 0.3429, 0.9512, 0.3604],
    ),
    row(
        80,
        [0.9484, 0.7024, 0.9544, 0.7242],
        [0.9306, 0.2902, 0.9480, 0.3059],
    ),
    row(
        100,
        [0.9510, 0.6032, 0.9582, 0.6256],
        [0.9370, 0.2576, 0.9526, 0.2715],
    ),
];

const A9_ROWS: &[Row] = &[
    row(
        10,
        [0.9902, 2.7163, 0.9534, 1.4944],
        [0.9876, 1.4680, 0.9508, 0.8058],
    ),
    row(
        15,
        [0.9948, 1.0852, 0.9548, 0.6194],
        [0.9886, 0.4993, 0.9514, 0.2831],
    ),
    row(
        20,
        [0.9982, 0.6805, 0.9560, 0.3890],
        [0.9962, 0.3029, 0.9572, 0.1729],
    ),
    row(
        25,
        [0.9984, 0.4902, 0.9574, 0.2811],
        [0.9964, 0.2187, 0.9488, 0.1252],
    ),
    row(
        30,
        [0.9992, 0.3873, 0.9590, 0.2228],
        [0.9976, 0.1702, 0.9498, 0.0978],
    ),
    row(
        40,
        [0.9996, 0.2680, 0.9568, 0.1546],
        [0.9990, 0.1185, 0.9490, 0.0682],
    ),
    row(
        60,
        [0.9988, 0.1664, 0.9564, 0.0965],
        [0.9992, 0.0737, 0.9524, 0.0425],
    ),
];

const A10_ROWS: &[Row] = &[
    row(
        10,
        [0.9680, 4.0582, 0.9466, 3.3854],
        [0.9716, 2.0019, 0.9464, 1.5865],
    ),
    row(
        15,
        [0.9576, 2.2923, 0.9500, 2.1557],
        [0.9562, 1.0295, 0.9462, 0.9604],
    ),
    row(
        20,
        [0.9568, 1.7938, 0.9556, 1.7325],
        [0.9570, 0.7872, 0.9500, 0.7592],
    ),
    row(
        25,
        [0.9546, 1.5033, 0.9490, 1.4664],
        [0.9554, 0.6651, 0.9524, 0.6490],
    ),
    row(
        30,
        [0.9578, 1.3266, 0.9550, 1.3032],
        [0.9498, 0.5833, 0.9464, 0.5729],
    ),
    row(
        40,
        [0.9536, 1.0928, 0.9524, 1.0811],
        [0.9516, 0.4863, 0.9480, 0.4807],
    ),
    row(
        60,
        [0.9508, 0.8603, 0.9506, 0.8580],
        [0.9476, 0.3829, 0.9464, 0.3817],
    ),
];

const A11_ROWS: &[Row] = &[
    row(
        10,
        [0.9280, 1.8027, 0.9544, 1.0244],
        [0.9482, 1.2874, 0.9580, 0.6929],
    ),
    row(
        15,
        [0.8974, 1.1248, 0.9590, 0.6848],
        [0.8186, 0.3381, 0.9506, 0.1988],
    ),
    row(
        20,
        [0.9070, 0.6659, 0.9564, 0.4103],
        [0.9100, 0.2095, 0.9472, 0.1231],
    ),
    row(
        25,
        [0.9450, 0.4441, 0.9590, 0.2703],
        [0.9450, 0.1638, 0.9454, 0.0961],
    ),
    row(
        30,
        [0.9640, 0.3810, 0.9506, 0.2330],
        [0.9502, 0.1255, 0.9488, 0.0739],
    ),
    row(
        40,
        [0.9688, 0.2786, 0.9500, 0.1708],
        [0.9814, 0.0859, 0.9504, 0.0503],
    ),
    row(
        60,
        [0.9942, 0.1656, 0.9498, 0.0990],
        [0.9900, 0.0570, 0.9480, 0.0333],
    ),
    row(
        80,
        [0.9944, 0.1300, 0.9518, 0.0778],
        [0.9952, 0.0403, 0.9484, 0.0235],
    ),
];

const A12_ROWS: &[Row] = &[
    row(
        10,
        [0.9334, 3.2449, 0.9580, 3.1588],
        [0.8632, 1.8881, 0.9514, 1.5780],
    ),
    row(
        15,
        [0.9236, 2.4419, 0.9550, 2.5324],
        [0.7856, 0.9347, 0.9504, 0.9803],
    ),
    row(
        20,
        [0.9250, 1.8296, 0.9590, 1.9552],
        [0.8508, 0.7578, 0.9500, 0.8072],
    ),
    row(
        25,
        [0.9338, 1.5833, 0.9530, 1.6796],
        [0.8886, 0.6715, 0.9504, 0.7119],
    ),
    row(
        30,
        [0.9368, 1.4651, 0.9592, 1.5604],
        [0.8940, 0.5959, 0.9482, 0.6345],
    ),
    row(
        40,
        [0.9366, 1.2333, 0.9586, 1.3205],
        [0.9216, 0.5001, 0.9546, 0.5320],
    ),
    row(
        60,
        [0.9484, 0.9570, 0.9618, 1.0009],
        [0.9336, 0.4161, 0.9472, 0.4355],
    ),
    row(
        80,
        [0.9500, 0.8526, 0.9582, 0.8863],
        [0.9362, 0.3555, 0.9512, 0.3699],
    ),
];

const A13_ROWS: &[Row] = &[
    row(
        10,
        [0.9040, 3.1536, 0.9504, 1.9124],
        [0.5436, 1.6283, 0.9516, 0.9765],
    ),
    row(
        15,
        [0.9586, 1.4680, 0.9562, 0.8803],
        [0.7598, 0.6796, 0.9488, 0.3985],
    ),
    row(
        20,
        [0.9854, 1.0007, 0.9582, 0.5797],
        [0.8662, 0.9790, 0.9500, 0.9922],
    ),
    row(
        25,
        [0.9930, 0.7564, 0.9612, 0.4362],
        [0.9516, 0.3354, 0.9494, 0.1926],
    ),
    row(
        30,
        [0.9950, 0.6072, 0.9568, 0.3493],
        [0.9758, 0.2679, 0.9542, 0.1535],
    ),
    row(
        40,
        [0.9978, 0.4360, 0.9570, 0.2506],
        [0.9908, 0.1927, 0.9452, 0.1106],
    ),
    row(
        60,
        [0.9982, 0.2774, 0.9522, 0.1599],
        [0.9972, 0.1229, 0.9532, 0.0706],
    ),
];

const A14_ROWS: &[Row] = &[
    row(
        10,
        [0.9224, 4.5282, 0.9514, 4.0328],
        [0.7526, 2.1923, 0.9468, 1.8693],
    ),
    row(
        15,
        [0.9428, 2.8311, 0.9536, 2.7314],
        [0.8898, 1.2851, 0.9480, 1.2185],
    ),
    row(
        20,
        [0.9534, 2.3211, 0.9538, 2.2558],
        [0.9334, 1.0264, 0.9500, 0.9922],
    ),
    row(
        25,
        [0.9528, 1.9920, 0.9496, 1.9465],
        [0.9390, 0.8791, 0.9498, 0.8588],
    ),
    row(
        30,
        [0.9554, 1.7696, 0.9550, 1.7372],
        [0.9438, 0.7811, 0.9488, 0.7655],
    ),
    row(
        40,
        [0.9524, 1.4834, 0.9528, 1.4649],
        [0.9466, 0.6610, 0.9504, 0.6519],
    ),
    row(
        60,
        [0.9512, 1.1823, 0.9512, 1.1750],
        [0.9488, 0.5282, 0.9488, 0.5241],
    ),
];

const A15_ROWS: &[Row] = &[
    row(
        40,
        [0.6734, 0.2972, 0.9592, 0.1966],
        [0.0034, 0.1326, 0.9498, 0.0869],
    ),
    row(
        60,
        [0.9082, 0.1932, 0.9544, 0.1226],
        [0.1416, 0.0868, 0.9474, 0.0545],
    ),
    row(
        80,
        [0.9646, 0.1455, 0.9578, 0.0899],
        [0.4758, 0.0652, 0.9570, 0.0402],
    ),
    row(
        100,
        [0.9848, 0.1138, 0.9540, 0.0692],
        [0.7168, 0.0518, 0.9506, 0.0314],
    ),
    row(
        120,
        [0.9894, 0.0960, 0.9574, 0.0579],
        [0.8472, 0.0433, 0.9552, 0.0260],
    ),
    row(
        150,
        [0.9958, 0.0767, 0.9542, 0.0459],
        [0.9150, 0.0345, 0.9488, 0.0206],
    ),
    row(
        180,
        [0.9974, 0.0642, 0.9570, 0.0381],
        [0.9554, 0.0287, 0.9476, 0.0171],
    ),
];

const A16_ROWS: &[Row] = &[
    row(
        40,
        [0.9060, 1.0924, 0.9526, 1.2183],
        [0.7966, 0.4884, 0.9470, 0.5429],
    ),
    row(
        60,
        [0.9302, 0.8934, 0.9528, 0.9670],
        [0.8882, 0.4001, 0.9486, 0.4317],
    ),
    row(
        80,
        [0.9380, 0.7891, 0.9554, 0.8369],
        [0.9126, 0.3489, 0.9468, 0.3698],
    ),
    row(
        100,
        [0.9430, 0.7027, 0.9552, 0.7376],
        [0.9334, 0.3131, 0.9534, 0.3281],
    ),
    row(
        120,
        [0.9438, 0.6444, 0.9552, 0.6707],
        [0.9352, 0.2864, 0.9496, 0.2981],
    ),
    row(
        150,
        [0.9462, 0.5750, 0.9534, 0.5945],
        [0.9410, 0.2564, 0.9528, 0.2653],
    ),
    row(
        180,
        [0.9492, 0.5270, 0.9558, 0.5429],
        [0.9458, 0.2342, 0.9524, 0.2410],
    ),
];
