//! Builds membership scripts for the families of invariant fields needed
//! for density. Each step's claimed value comes from a closed form; nothing
//! here is trusted until [`super::script::verify_script`] recomputes it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::genring::{eliminate_z, x_normal_form, GeneratorWord};
use crate::polyring::{Rational, SurfaceParameters};
use crate::torus::Generator;

use super::certificate::CompletenessCertificate;
use super::fields::StandardFields;
use super::script::{MembershipScript, ScriptStep, StepOp};

/// Fields the planner knows how to reach.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// `x_k · x_b^n · δ`, `n ≥ 1`.
    XDelta { k: u32, n: u32 },
    /// `x0^m · x_k · x_b^n · ε`. With `n = 0` only `k ∈ {0, b}` is reachable.
    XEps { m: u32, k: u32, n: u32 },
    /// `y^(b+r) · ε`.
    YEps { r: u32 },
    /// `y^(b+r) · x0^m · x_k · x_b^n · ε`, same index rules as `XEps`.
    Mixed { r: u32, m: u32, k: u32, n: u32 },
    /// `c · x0·x1···x_b · y^b · ε` for a generator word `c`.
    Module { coefficient: GeneratorWord },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Base {
    Delta,
    DeltaPrime,
    Eps,
}

impl Base {
    fn name(self) -> &'static str {
        match self {
            Base::Delta => "delta",
            Base::DeltaPrime => "deltaprime",
            Base::Eps => "eps",
        }
    }
}

fn x_word(params: SurfaceParameters, m: u32, k: u32, n: u32) -> GeneratorWord {
    let mut w = GeneratorWord::one(params);
    w.mul_generator(Generator::X(0), m);
    w.mul_generator(Generator::X(k), 1);
    w.mul_generator(Generator::X(params.b), n);
    w
}

impl Target {
    fn check(&self, params: &SurfaceParameters) -> Result<()> {
        let b = params.b;
        let unsupported = || Err(Error::UnsupportedTarget(self.to_string()));
        match *self {
            Target::XDelta { k, n } => {
                if k > b || n == 0 {
                    return unsupported();
                }
            }
            Target::XEps { k, n, .. } | Target::Mixed { k, n, .. } => {
                if k > b || (n == 0 && k != 0 && k != b) {
                    return unsupported();
                }
            }
            Target::YEps { .. } => {}
            Target::Module { ref coefficient } => {
                params.check_same(coefficient.params())?;
            }
        }
        Ok(())
    }

    /// The generator word `g` with `field = g · base`.
    fn word(&self, params: SurfaceParameters) -> GeneratorWord {
        let b = params.b;
        let y = |r: u32| GeneratorWord::generator_pow(params, Generator::Y, b + r);
        match *self {
            Target::XDelta { k, n } => x_word(params, 0, k, n),
            Target::XEps { m, k, n } => x_word(params, m, k, n),
            Target::YEps { r } => y(r),
            Target::Mixed { r, m, k, n } => y(r).multiply(&x_word(params, m, k, n)),
            Target::Module { ref coefficient } => module_word(params).multiply(coefficient),
        }
    }

    fn base(&self) -> Base {
        match self {
            Target::XDelta { .. } => Base::Delta,
            _ => Base::Eps,
        }
    }

    pub fn field(&self, fields: &StandardFields) -> Derivation {
        let base = match self.base() {
            Base::Delta => &fields.delta,
            Base::DeltaPrime => &fields.delta_prime,
            Base::Eps => &fields.eps,
        };
        base.times(&self.word(fields.params).lift())
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::XDelta { k, n } => write!(f, "x{k}*x_b^{n}*delta"),
            Target::XEps { m, k, n } => write!(f, "x0^{m}*x{k}*x_b^{n}*eps"),
            Target::YEps { r } => write!(f, "y^(b+{r})*eps"),
            Target::Mixed { r, m, k, n } => write!(f, "y^(b+{r})*x0^{m}*x{k}*x_b^{n}*eps"),
            Target::Module { coefficient } => write!(f, "({coefficient})*x0*...*x_b*y^b*eps"),
        }
    }
}

/// `x0·x1···x_b · y^b`.
pub fn module_word(params: SurfaceParameters) -> GeneratorWord {
    GeneratorWord::x_staircase(params).multiply(&GeneratorWord::generator_pow(params, Generator::Y, params.b))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Straight-line script under construction, with steps shared by label.
pub struct ScriptBuilder {
    params: SurfaceParameters,
    fields: StandardFields,
    steps: Vec<ScriptStep>,
    memo: HashMap<String, usize>,
}

impl ScriptBuilder {
    pub fn new(params: SurfaceParameters) -> Self {
        ScriptBuilder {
            params,
            fields: StandardFields::new(params),
            steps: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn b(&self) -> u32 {
        self.params.b
    }

    fn xw(&self, m: u32, k: u32, n: u32) -> GeneratorWord {
        x_word(self.params, m, k, n)
    }

    fn yw(&self, r: u32) -> GeneratorWord {
        GeneratorWord::generator_pow(self.params, Generator::Y, r)
    }

    fn base_field(&self, base: Base) -> &Derivation {
        match base {
            Base::Delta => &self.fields.delta,
            Base::DeltaPrime => &self.fields.delta_prime,
            Base::Eps => &self.fields.eps,
        }
    }

    fn field(&self, w: &GeneratorWord, base: Base) -> Derivation {
        self.base_field(base).times(&w.lift())
    }

    fn label(w: &GeneratorWord, base: Base) -> String {
        if w.degree() == 0 {
            base.name().to_string()
        } else {
            format!("{w}*{}", base.name())
        }
    }

    fn push(&mut self, label: String, op: StepOp, claimed: Derivation) -> usize {
        if let Some(&i) = self.memo.get(&label) {
            return i;
        }
        let i = self.steps.len();
        self.steps.push(ScriptStep {
            label: label.clone(),
            op,
            claimed,
        });
        self.memo.insert(label, i);
        i
    }

    fn base_certificate(&self, base: Base) -> CompletenessCertificate {
        match base {
            Base::Delta => self.fields.delta_certificate(),
            Base::DeltaPrime => self.fields.delta_prime_certificate(),
            Base::Eps => self.fields.eps_certificate(),
        }
    }

    /// `w · base` as a complete leaf; `w` must lie in the kernel of `base`.
    fn leaf(&mut self, w: &GeneratorWord, base: Base) -> usize {
        let label = Self::label(w, base);
        if let Some(&i) = self.memo.get(&label) {
            return i;
        }
        let base_cert = self.base_certificate(base);
        let cert = if w.degree() == 0 {
            base_cert
        } else {
            CompletenessCertificate::function_times(w.lift(), base_cert)
        };
        let claimed = cert.field().clone();
        self.push(label, StepOp::Leaf(cert), claimed)
    }

    fn bracket(&mut self, left: usize, right: usize, claimed: Derivation) -> usize {
        let label = format!("[{}, {}]", self.steps[left].label, self.steps[right].label);
        self.push(label, StepOp::Bracket { left, right }, claimed)
    }

    fn lincomb(&mut self, label: String, terms: Vec<(Rational, usize)>, claimed: Derivation) -> usize {
        self.push(label, StepOp::LinComb(terms), claimed)
    }

    fn cached(&self, label: &str) -> Option<usize> {
        self.memo.get(label).copied()
    }

    // ---- ε family -------------------------------------------------------

    fn x0_eps(&mut self) -> usize {
        let w = self.xw(0, 0, 0);
        self.leaf(&w, Base::Eps)
    }

    /// `x_b ε` from the chain `X_1 = [δ, x0 ε]`, `X_s = [δ, X_{s-1}]`.
    fn xb_eps(&mut self) -> usize {
        let b = self.b();
        let target = self.xw(0, b, 0);
        let label = Self::label(&target, Base::Eps);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let delta = self.leaf(&GeneratorWord::one(self.params), Base::Delta);
        let mut prev = self.x0_eps();
        let bf = factorial(b);
        for s in 1..=b {
            // X_s = s·b!/(b-s+1)!·x_{s-1} δ + b!/(b-s)!·x_s ε
            let c_delta = Rational::from_integer(BigInt::from(s) * &bf / factorial(b - s + 1));
            let c_eps = Rational::from_integer(&bf / factorial(b - s));
            let claimed = &self.field(&self.xw(0, s - 1, 0), Base::Delta).scale(&c_delta)
                + &self.field(&self.xw(0, s, 0), Base::Eps).scale(&c_eps);
            prev = self.bracket(delta, prev, claimed);
        }
        let tail = self.leaf(&self.xw(0, b - 1, 0), Base::Delta);
        let claimed = self.field(&target, Base::Eps);
        self.lincomb(
            label,
            vec![(Rational::new(BigInt::one(), bf), prev), (q(-(b as i64), 1), tail)],
            claimed,
        )
    }

    fn x0xb_eps(&mut self) -> usize {
        self.xk_xbn_eps(0, 1)
    }

    /// `x_k x_b^n ε`, `n ≥ 1`, or `n = 0` with `k ∈ {0, b}`.
    fn xk_xbn_eps(&mut self, k: u32, n: u32) -> usize {
        let b = self.b();
        if n == 0 && k == 0 {
            return self.x0_eps();
        }
        if n == 0 && k == b {
            return self.xb_eps();
        }
        let target = self.xw(0, k, n);
        let label = Self::label(&target, Base::Eps);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Eps);
        if k == 0 {
            // [x0 ε, x_b^n ε] = -nb · x0 x_b^n ε
            let a = self.x0_eps();
            let c = self.xk_xbn_eps(b, n - 1);
            let br = self.bracket(a, c, claimed.scale(&q(-((n * b) as i64), 1)));
            return self.lincomb(label, vec![(q(-1, (n * b) as i64), br)], claimed);
        }
        let d = (b - k + 1) as i64;
        let prev_eps = self.xk_xbn_eps(k - 1, 1);
        let (lead, c) = if n == 1 {
            (self.leaf(&GeneratorWord::one(self.params), Base::Delta), 1)
        } else {
            (self.leaf(&self.xw(0, b, n - 2), Base::Delta), 1 + (b * (n - 1)) as i64)
        };
        // [x_b^(n-1) δ, x_(k-1) x_b ε] = c · x_(k-1) x_b^n δ + (b-k+1) · x_k x_b^n ε
        let side = self.field(&self.xw(0, k - 1, n), Base::Delta);
        let br = self.bracket(lead, prev_eps, &side.scale(&q(c, 1)) + &claimed.scale(&q(d, 1)));
        let side_step = self.xk_xbn_delta(k - 1, n);
        self.lincomb(label, vec![(q(1, d), br), (q(-c, d), side_step)], claimed)
    }

    /// `x0^m x_k x_b^n ε`.
    fn x0m_xk_xbn_eps(&mut self, m: u32, k: u32, n: u32) -> usize {
        if m == 0 {
            return self.xk_xbn_eps(k, n);
        }
        let b = self.b();
        if n == 0 && k == 0 {
            return self.leaf(&self.xw(m, 0, 0), Base::Eps);
        }
        let target = self.xw(m, k, n);
        let label = Self::label(&target, Base::Eps);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Eps);
        let c = -((n * b + k) as i64);
        let a = self.leaf(&self.xw(m - 1, 0, 0), Base::Eps);
        let inner = self.xk_xbn_eps(k, n);
        let br = self.bracket(a, inner, claimed.scale(&q(c, 1)));
        self.lincomb(label, vec![(q(1, c), br)], claimed)
    }

    // ---- δ family -------------------------------------------------------

    /// `x0 x_b δ = -(1/b)(s1 + s2)` with `s1 = [x0 ε, x_b δ]`,
    /// `s2 = [δ, x0 x_b ε]`.
    fn x0xb_delta(&mut self) -> usize {
        let b = self.b() as i64;
        let target = self.xw(0, 0, 1);
        let label = Self::label(&target, Base::Delta);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Delta);
        let cross = self.field(&self.xw(0, 1, 1), Base::Eps);
        let a = self.x0_eps();
        let xb_delta = self.leaf(&self.xw(0, self.b(), 0), Base::Delta);
        let s1 = self.bracket(a, xb_delta, &claimed.scale(&q(-(1 + b), 1)) - &cross.scale(&q(b, 1)));
        let delta = self.leaf(&GeneratorWord::one(self.params), Base::Delta);
        let e = self.x0xb_eps();
        let s2 = self.bracket(delta, e, &claimed + &cross.scale(&q(b, 1)));
        let sum = self.lincomb(
            "s1 + s2".to_string(),
            vec![(Rational::one(), s1), (Rational::one(), s2)],
            claimed.scale(&q(-b, 1)),
        );
        self.lincomb(label, vec![(q(-1, b), sum)], claimed)
    }

    /// `x0 x_(b-1) δ = -(1/b)[x0 ε, x_(b-1) δ] - x0 x_b ε`.
    fn x0_xbm1_delta(&mut self) -> usize {
        let b = self.b();
        let target = self.xw(1, b - 1, 0);
        let label = Self::label(&target, Base::Delta);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Delta);
        let a = self.x0_eps();
        let l = self.leaf(&self.xw(0, b - 1, 0), Base::Delta);
        let x0xb_eps_field = self.field(&self.xw(0, 0, 1), Base::Eps);
        let bi = b as i64;
        let t = self.bracket(a, l, &claimed.scale(&q(-bi, 1)) - &x0xb_eps_field.scale(&q(bi, 1)));
        let e = self.x0xb_eps();
        self.lincomb(label, vec![(q(-1, bi), t), (q(-1, 1), e)], claimed)
    }

    /// `x_k x_b^n δ`, `n ≥ 1`.
    fn xk_xbn_delta(&mut self, k: u32, n: u32) -> usize {
        let b = self.b();
        if k == b {
            return self.leaf(&self.xw(0, b, n), Base::Delta);
        }
        if k == 0 && n == 1 {
            return self.x0xb_delta();
        }
        let target = self.xw(0, k, n);
        let label = Self::label(&target, Base::Delta);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Delta);
        if k == 0 {
            // y x_b δ = x0 x_(b-1) δ + x_(b-1) δ, then
            // [x_b^(n-1) δ, y x_b δ] = x_b^n δ + n' · x0 x_b^n δ with n' = b + 1
            let np = (b + 1) as i64;
            let mut yxb = self.yw(1);
            yxb.mul_generator(Generator::X(b), 1);
            let p = self.x0_xbm1_delta();
            let l = self.leaf(&self.xw(0, b - 1, 0), Base::Delta);
            let yxb_step = self.lincomb(
                Self::label(&yxb, Base::Delta),
                vec![(Rational::one(), p), (Rational::one(), l)],
                self.field(&yxb, Base::Delta),
            );
            let lead = self.leaf(&self.xw(0, b, n - 2), Base::Delta);
            let xbn = self.field(&self.xw(0, b, n - 1), Base::Delta);
            let u = self.bracket(lead, yxb_step, &xbn + &claimed.scale(&q(np, 1)));
            let xbn_leaf = self.leaf(&self.xw(0, b, n - 1), Base::Delta);
            return self.lincomb(label, vec![(q(1, np), u), (q(-1, np), xbn_leaf)], claimed);
        }
        // [x_b^(n-1) δ, x_(k-1) x_b δ] = (b-k+1) · x_k x_b^n δ
        let d = (b - k + 1) as i64;
        let lead = if n == 1 {
            self.leaf(&GeneratorWord::one(self.params), Base::Delta)
        } else {
            self.leaf(&self.xw(0, b, n - 2), Base::Delta)
        };
        let prev = self.xk_xbn_delta(k - 1, 1);
        let br = self.bracket(lead, prev, claimed.scale(&q(d, 1)));
        self.lincomb(label, vec![(q(1, d), br)], claimed)
    }

    // ---- y family -------------------------------------------------------

    /// `y^(b+r) ε = (b+r) x0 y^r δ′ - [x0 ε, y^r δ′]`.
    fn y_eps(&mut self, r: u32) -> usize {
        let b = self.b();
        let target = self.yw(b + r);
        let label = Self::label(&target, Base::Eps);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Eps);
        let c = (b + r) as i64;
        let a = self.x0_eps();
        let yr = self.yw(r);
        let l = self.leaf(&yr, Base::DeltaPrime);
        let x0yr = yr.multiply(&self.xw(0, 0, 0));
        let side = self.field(&x0yr, Base::DeltaPrime);
        let br = self.bracket(a, l, &side.scale(&q(c, 1)) - &claimed);
        let t = self.leaf(&x0yr, Base::DeltaPrime);
        self.lincomb(label, vec![(q(c, 1), t), (q(-1, 1), br)], claimed)
    }

    /// `[y^(b+r) ε, x0^m x_k x_b^n ε] = -(k + bn + b + r) · target`.
    fn mixed(&mut self, r: u32, m: u32, k: u32, n: u32) -> usize {
        let b = self.b();
        let target = self.yw(b + r).multiply(&self.xw(m, k, n));
        let label = Self::label(&target, Base::Eps);
        if let Some(i) = self.cached(&label) {
            return i;
        }
        let claimed = self.field(&target, Base::Eps);
        let c = -((k + b * n + b + r) as i64);
        let ye = self.y_eps(r);
        let inner = self.x0m_xk_xbn_eps(m, k, n);
        let br = self.bracket(ye, inner, claimed.scale(&q(c, 1)));
        self.lincomb(label, vec![(q(1, c), br)], claimed)
    }

    /// `c · x0···x_b · y^b · ε` through `z = 1 + x0` and the x-normal form.
    fn module(&mut self, coefficient: &GeneratorWord) -> Result<usize> {
        let b = self.b();
        let full = module_word(self.params).multiply(coefficient);
        let mut terms = Vec::new();
        for (w, c) in eliminate_z(&full).terms() {
            let nf = x_normal_form(&w.x_part())?;
            debug_assert!(nf.m >= 1 && nf.n >= 1);
            let r = w.y_exponent() - b;
            let step = match nf.h {
                Some(k) => self.mixed(r, nf.m, k, nf.n),
                None => self.mixed(r, nf.m - 1, 0, nf.n),
            };
            terms.push((c.clone(), step));
        }
        let claimed = self.field(&full, Base::Eps);
        let label = format!("({coefficient})*{}", Self::label(&module_word(self.params), Base::Eps));
        Ok(self.lincomb(label, terms, claimed))
    }

    /// Adds the steps for `target` and returns the index of the last one.
    pub fn add(&mut self, target: &Target) -> Result<usize> {
        target.check(&self.params)?;
        Ok(match *target {
            Target::XDelta { k, n } => self.xk_xbn_delta(k, n),
            Target::XEps { m, k, n } => self.x0m_xk_xbn_eps(m, k, n),
            Target::YEps { r } => self.y_eps(r),
            Target::Mixed { r, m, k, n } => self.mixed(r, m, k, n),
            Target::Module { ref coefficient } => self.module(coefficient)?,
        })
    }

    /// Closes the script with step `idx` as its result.
    pub fn finish(mut self, target: &Target, idx: usize) -> MembershipScript {
        let target_field = target.field(&self.fields);
        if idx + 1 != self.steps.len() {
            // the result was memoised earlier; repeat it as the final step
            let claimed = self.steps[idx].claimed.clone();
            self.steps.push(ScriptStep {
                label: format!("= {}", self.steps[idx].label),
                op: StepOp::LinComb(vec![(Rational::one(), idx)]),
                claimed,
            });
        }
        MembershipScript {
            params: self.params,
            target_label: target.to_string(),
            target: target_field,
            steps: self.steps,
        }
    }
}

/// A script realising `target` from complete leaves.
pub fn plan_membership(target: &Target, params: SurfaceParameters) -> Result<MembershipScript> {
    let mut builder = ScriptBuilder::new(params);
    let idx = builder.add(target)?;
    Ok(builder.finish(target, idx))
}
