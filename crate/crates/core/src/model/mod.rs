//! The model DSL and the differential generators of a parsed model.

mod expr;
mod lexer;

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::print::fmt_ratfun;
use crate::arith::{poly_lcm, MPoly, RatFun, VarList};
use crate::diff::{DiffPoly, DiffRing, DiffVar};
use crate::error::{Error, ParseError, ParseErrorKind, Result};

use expr::{ExprParser, Occurrence};
use lexer::{error_at, tokenize, Tok, Token};

/// `x' = f / Q`, `y = g / Q` with parameters.
///
/// Polynomials live in the model ring whose variables are the parameters,
/// then the states, then the inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub params: Vec<String>,
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub f: Vec<MPoly>,
    pub g: Vec<MPoly>,
    pub q: MPoly,
}

impl Model {
    /// Clears the denominators of `x_i' = state_rhs[i]`, `y_j = output_rhs[j]`
    /// into one monic common denominator.
    pub fn from_rational(
        params: Vec<String>,
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        state_rhs: &[RatFun],
        output_rhs: &[RatFun],
    ) -> Result<Model> {
        if state_rhs.len() != states.len() || output_rhs.len() != outputs.len() {
            return Err(Error::Arity("one right-hand side per state and output".into()));
        }
        let all = state_rhs.iter().chain(output_rhs);
        let q = all.clone().fold(MPoly::one(), |acc, r| poly_lcm(&acc, r.den()));
        let clear = |r: &RatFun| -> Result<MPoly> { Ok(r.num().mul(&q.exact_div(r.den())?)) };
        let f = state_rhs.iter().map(clear).collect::<Result<Vec<_>>>()?;
        let g = output_rhs.iter().map(clear).collect::<Result<Vec<_>>>()?;
        let model = Model {
            params,
            states,
            inputs,
            outputs,
            f,
            g,
            q,
        };
        model.ring().check(&model.q)?;
        for p in model.f.iter().chain(&model.g) {
            model.ring().check(p)?;
        }
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn kappa(&self) -> usize {
        self.inputs.len()
    }

    pub fn lambda(&self) -> usize {
        self.params.len()
    }

    /// Names of the model ring: parameters, states, inputs.
    pub fn ring(&self) -> VarList {
        VarList::new(self.params.iter().chain(&self.states).chain(&self.inputs).cloned())
    }

    pub fn state_var(&self, i: usize) -> usize {
        self.lambda() + i
    }

    pub fn input_var(&self, l: usize) -> usize {
        self.lambda() + self.n() + l
    }

    pub fn diff_ring(&self) -> DiffRing {
        DiffRing::new(&self.params, &self.states, &self.outputs, &self.inputs)
    }

    pub fn state_rhs(&self, i: usize) -> RatFun {
        RatFun::new(self.f[i].clone(), self.q.clone()).expect("Q is nonzero")
    }

    pub fn output_rhs(&self, j: usize) -> RatFun {
        RatFun::new(self.g[j].clone(), self.q.clone()).expect("Q is nonzero")
    }
}

impl fmt::Display for Model {
    /// DSL text that parses back to the same model.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring();
        writeln!(out, "params: {}", self.params.join(", "))?;
        writeln!(out, "states: {}", self.states.join(", "))?;
        if !self.inputs.is_empty() {
            writeln!(out, "inputs: {}", self.inputs.join(", "))?;
        }
        writeln!(out, "outputs: {}", self.outputs.join(", "))?;
        for (i, x) in self.states.iter().enumerate() {
            writeln!(out, "{x}' = {}", fmt_ratfun(&self.state_rhs(i), names.names()))?;
        }
        for (j, y) in self.outputs.iter().enumerate() {
            writeln!(out, "{y} = {}", fmt_ratfun(&self.output_rhs(j), names.names()))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Param,
    State,
    Input,
    Output,
}

#[derive(Default)]
struct Declarations {
    params: Option<Vec<String>>,
    states: Option<Vec<String>>,
    inputs: Option<Vec<String>>,
    outputs: Option<Vec<String>>,
    roles: BTreeMap<String, (Role, usize)>,
}

impl Declarations {
    fn ring_index(&self, role: Role, i: usize) -> usize {
        let np = self.params.as_ref().map_or(0, Vec::len);
        let ns = self.states.as_ref().map_or(0, Vec::len);
        match role {
            Role::Param => i,
            Role::State => np + i,
            Role::Input => np + ns + i,
            Role::Output => unreachable!("outputs are not ring variables"),
        }
    }

    fn missing(&self) -> Option<&'static str> {
        if self.params.is_none() {
            Some("params")
        } else if self.states.is_none() {
            Some("states")
        } else if self.outputs.is_none() {
            Some("outputs")
        } else {
            None
        }
    }
}

struct Cursor<'t> {
    toks: &'t [Token],
    pos: usize,
}

impl<'t> Cursor<'t> {
    fn peek(&self) -> &'t Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &'t Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        error_at(self.peek(), ParseErrorKind::Syntax(msg.into()))
    }

    fn end_of_line(&mut self) -> Result<(), ParseError> {
        match self.peek().tok {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.syntax("expected end of line")),
        }
    }

    fn ident(&mut self) -> Result<(String, &'t Token), ParseError> {
        let t = self.peek();
        match &t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s.clone(), t))
            }
            _ => Err(self.syntax("expected an identifier")),
        }
    }
}

const KEYWORDS: [&str; 4] = ["params", "states", "inputs", "outputs"];

/// Parses model DSL text into a validated [`Model`].
pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let toks = tokenize(text)?;
    let mut cur = Cursor { toks: &toks, pos: 0 };
    let mut decl = Declarations::default();
    let mut state_rhs: BTreeMap<usize, RatFun> = BTreeMap::new();
    let mut output_rhs: BTreeMap<usize, RatFun> = BTreeMap::new();
    let mut seen_equation = false;

    loop {
        let t = cur.peek();
        match &t.tok {
            Tok::Eof => break,
            Tok::Newline => {
                cur.bump();
                continue;
            }
            Tok::Ident(word) if KEYWORDS.contains(&word.as_str()) && *cur.peek_at(1) == Tok::Colon => {
                if seen_equation {
                    return Err(error_at(t, ParseErrorKind::DeclarationAfterEquation));
                }
                cur.bump();
                cur.bump();
                let names = id_list(&mut cur)?;
                let role = match word.as_str() {
                    "params" => Role::Param,
                    "states" => Role::State,
                    "inputs" => Role::Input,
                    _ => Role::Output,
                };
                let slot = match role {
                    Role::Param => &mut decl.params,
                    Role::State => &mut decl.states,
                    Role::Input => &mut decl.inputs,
                    Role::Output => &mut decl.outputs,
                };
                if slot.is_some() {
                    return Err(error_at(t, ParseErrorKind::Syntax(format!("`{word}:` declared twice"))));
                }
                for (i, (name, at)) in names.iter().enumerate() {
                    if decl.roles.insert(name.clone(), (role, i)).is_some() {
                        return Err(error_at(at, ParseErrorKind::DuplicateName(name.clone())));
                    }
                }
                *slot = Some(names.into_iter().map(|(n, _)| n).collect());
                cur.end_of_line()?;
            }
            Tok::Ident(_) => {
                if !seen_equation {
                    if let Some(kw) = decl.missing() {
                        return Err(error_at(t, ParseErrorKind::MissingDeclaration(kw)));
                    }
                    seen_equation = true;
                }
                let (lhs, at) = cur.ident()?;
                let primed = cur.peek().tok == Tok::Prime;
                if primed {
                    cur.bump();
                }
                if cur.peek().tok != Tok::Eq {
                    return Err(cur.syntax("expected `=`"));
                }
                cur.bump();
                let role = decl.roles.get(&lhs).copied();
                let target = match (role, primed) {
                    (None, _) => return Err(error_at(at, ParseErrorKind::UndeclaredIdentifier(lhs))),
                    (Some((Role::State, i)), true) => (&mut state_rhs, i),
                    (Some((Role::Output, j)), false) => (&mut output_rhs, j),
                    (Some((Role::State, _)), false) => {
                        return Err(error_at(
                            at,
                            ParseErrorKind::Syntax(format!("state `{lhs}` needs a `'` on the left-hand side")),
                        ))
                    }
                    (Some(_), _) => {
                        return Err(error_at(
                            at,
                            ParseErrorKind::Syntax(format!("`{lhs}` cannot be the left-hand side of an equation")),
                        ))
                    }
                };
                let value = rhs_expression(&mut cur, &decl)?;
                if target.0.insert(target.1, value).is_some() {
                    return Err(error_at(at, ParseErrorKind::DuplicateEquation(lhs)));
                }
                cur.end_of_line()?;
            }
            _ => return Err(cur.syntax("expected a declaration or an equation")),
        }
    }

    let eof = cur.peek();
    if let Some(kw) = decl.missing() {
        return Err(error_at(eof, ParseErrorKind::MissingDeclaration(kw)));
    }
    let params = decl.params.clone().unwrap_or_default();
    let states = decl.states.clone().unwrap_or_default();
    let inputs = decl.inputs.clone().unwrap_or_default();
    let outputs = decl.outputs.clone().unwrap_or_default();
    for (i, x) in states.iter().enumerate() {
        if !state_rhs.contains_key(&i) {
            return Err(error_at(eof, ParseErrorKind::MissingEquation(x.clone())));
        }
    }
    for (j, y) in outputs.iter().enumerate() {
        if !output_rhs.contains_key(&j) {
            return Err(error_at(eof, ParseErrorKind::MissingEquation(y.clone())));
        }
    }
    let srhs: Vec<RatFun> = state_rhs.into_values().collect();
    let orhs: Vec<RatFun> = output_rhs.into_values().collect();
    Model::from_rational(params, states, inputs, outputs, &srhs, &orhs)
        .map_err(|e| error_at(eof, ParseErrorKind::Syntax(e.to_string())))
}

fn id_list<'t>(cur: &mut Cursor<'t>) -> Result<Vec<(String, &'t Token)>, ParseError> {
    let mut names = Vec::new();
    if matches!(cur.peek().tok, Tok::Newline | Tok::Eof) {
        return Ok(names);
    }
    names.push(cur.ident()?);
    while cur.peek().tok == Tok::Comma {
        cur.bump();
        names.push(cur.ident()?);
    }
    Ok(names)
}

fn rhs_expression(cur: &mut Cursor<'_>, decl: &Declarations) -> Result<RatFun, ParseError> {
    let resolve = |name: &str, occ: Occurrence| -> Result<RatFun, ParseErrorKind> {
        let (role, i) = decl
            .roles
            .get(name)
            .copied()
            .ok_or_else(|| ParseErrorKind::UndeclaredIdentifier(name.to_string()))?;
        if role == Role::Output {
            return Err(ParseErrorKind::OutputOnRightHandSide(name.to_string()));
        }
        if occ.has_suffix {
            return Err(ParseErrorKind::DerivativeOnRightHandSide(name.to_string()));
        }
        Ok(RatFun::var(decl.ring_index(role, i)))
    };
    let mut p = ExprParser::new(cur.toks, cur.pos, resolve, false);
    let v = p.expr()?;
    cur.pos = p.position();
    Ok(v)
}

fn parse_whole<V: expr::ExprValue>(
    text: &str,
    resolve: impl FnMut(&str, Occurrence) -> Result<V, ParseErrorKind>,
    derivative_caret: bool,
) -> Result<V, ParseError> {
    let toks = tokenize(text)?;
    let mut p = ExprParser::new(&toks, 0, resolve, derivative_caret);
    let v = p.expr()?;
    let end = &toks[p.position()];
    if end.tok != Tok::Eof {
        return Err(error_at(end, ParseErrorKind::Syntax("trailing input".into())));
    }
    Ok(v)
}

/// Parses a rational function over the model ring (parameters, states, inputs).
pub fn parse_expression(text: &str, model: &Model) -> Result<RatFun, ParseError> {
    let ring = model.ring();
    let outputs = &model.outputs;
    parse_whole(
        text,
        |name, occ| {
            if outputs.iter().any(|y| y == name) {
                return Err(ParseErrorKind::OutputOnRightHandSide(name.to_string()));
            }
            let i = ring
                .index_of(name)
                .ok_or_else(|| ParseErrorKind::UndeclaredIdentifier(name.to_string()))?;
            if occ.has_suffix {
                return Err(ParseErrorKind::DerivativeOnRightHandSide(name.to_string()));
            }
            Ok(RatFun::var(i))
        },
        false,
    )
}

/// Parses a differential polynomial; `y'`, `y''` and `y^(k)` denote derivatives.
pub fn parse_diffpoly(text: &str, ring: &DiffRing) -> Result<DiffPoly, ParseError> {
    parse_whole(
        text,
        |name, occ| {
            if let Some(k) = ring.params().iter().position(|p| p == name) {
                if occ.has_suffix {
                    return Err(ParseErrorKind::DerivativeOnRightHandSide(name.to_string()));
                }
                return Ok(DiffPoly::constant(RatFun::var(k)));
            }
            let b = ring
                .base_index(name)
                .ok_or_else(|| ParseErrorKind::UndeclaredIdentifier(name.to_string()))?;
            Ok(ring.var_poly(DiffVar::new(b, occ.order)))
        },
        true,
    )
}

/// Generators `Q x_i' - f_i`, `Q y_j - g_j` and the saturating element `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaGenerators {
    pub diff_eqs: Vec<DiffPoly>,
    pub out_eqs: Vec<DiffPoly>,
    pub saturator: MPoly,
}

impl SigmaGenerators {
    pub fn all(&self) -> Vec<DiffPoly> {
        self.diff_eqs.iter().chain(&self.out_eqs).cloned().collect()
    }
}

pub fn build_sigma_generators(m: &Model) -> SigmaGenerators {
    let ring = m.diff_ring();
    let q = ring.from_model_poly(&m.q);
    let diff_eqs = (0..m.n())
        .map(|i| {
            let dx = ring.var_poly(DiffVar::new(ring.state(i), 1));
            q.mul(&dx).sub(&ring.from_model_poly(&m.f[i]))
        })
        .collect();
    let out_eqs = (0..m.m())
        .map(|j| {
            let y = ring.var_poly(DiffVar::new(ring.output(j), 0));
            q.mul(&y).sub(&ring.from_model_poly(&m.g[j]))
        })
        .collect();
    SigmaGenerators {
        diff_eqs,
        out_eqs,
        saturator: m.q.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::fmt_diffpoly;

    const LINEAR: &str = "params: a, b\nstates: x1\noutputs: y1\nx1' = (a+b)*x1\ny1 = x1\n";
    const OSC: &str = "# twisted oscillator\nparams: w\nstates: x1, x2, x3\noutputs: y1, y2\n\
x1' = (w + x3)*x2\nx2' = -w*x1\nx3' = 0\ny1 = x2\ny2 = x3\n";

    fn v(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn parses_linear_model() {
        let m = parse_model(LINEAR).unwrap();
        assert_eq!((m.n(), m.m(), m.kappa(), m.lambda()), (1, 1, 0, 2));
        assert!(m.q.is_one());
        assert_eq!(m.f, vec![&(&v(0) + &v(1)) * &v(2)]);
        assert_eq!(m.g, vec![v(2)]);
    }

    #[test]
    fn parses_oscillator() {
        let m = parse_model(OSC).unwrap();
        // ring: w, x1, x2, x3
        let f1 = &(&v(0) + &v(3)) * &v(2);
        let f2 = -(&v(0) * &v(1));
        assert_eq!(m.f, vec![f1, f2, MPoly::zero()]);
        assert_eq!(m.g, vec![v(2), v(3)]);
        assert!(m.q.is_one());
    }

    #[test]
    fn clears_denominators() {
        let m = parse_model("params: a\nstates: x1\noutputs: y1\nx1' = x1/(a)\ny1 = x1\n").unwrap();
        assert_eq!(m.q, v(0));
        assert_eq!(m.f, vec![v(1)]);
        assert_eq!(m.g, vec![&v(0) * &v(1)]);
        let m = parse_model("params: a\nstates: x\noutputs: y\nx' = 1/(x+a)\ny = x/a\n").unwrap();
        assert_eq!(m.q, &(&v(0) * &v(1)) + &v(0).pow(2));
        assert_eq!(m.state_rhs(0), RatFun::new(MPoly::one(), &v(1) + &v(0)).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = z\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredIdentifier("z".into()));
        assert_eq!((e.line, e.column), (4, 6));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = y\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::OutputOnRightHandSide("y".into()));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = x'\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DerivativeOnRightHandSide("x".into()));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = x\nx' = a\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateEquation("x".into()));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingEquation("y".into()));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = (x\ny = x\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.line, 4);
        let e = parse_model("params: a, a\nstates: x\noutputs: y\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateName("a".into()));
        let e = parse_model("states: x\noutputs: y\nx' = x\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingDeclaration("params"));
        let e = parse_model("params: a\nstates: x\noutputs: y\nx' = x\ninputs: u\ny = x\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DeclarationAfterEquation);
    }

    #[test]
    fn display_round_trips() {
        for src in [LINEAR, OSC, "params: a, b\nstates: x\ninputs: u\noutputs: y\nx' = (u - x)/(a*x + b)\ny = x^2/b\n"] {
            let m = parse_model(src).unwrap();
            let again = parse_model(&m.to_string()).unwrap();
            assert_eq!(m, again, "{}", m);
        }
    }

    #[test]
    fn sigma_generators() {
        let m = parse_model(LINEAR).unwrap();
        let ring = m.diff_ring();
        let g = build_sigma_generators(&m);
        let expected: Vec<DiffPoly> = ["x1' - (a + b)*x1", "y1 - x1"]
            .iter()
            .map(|s| parse_diffpoly(s, &ring).unwrap())
            .collect();
        assert_eq!(g.all(), expected);
        assert!(g.saturator.is_one());

        let m = parse_model("params: a\nstates: x1\noutputs: y1\nx1' = x1/a\ny1 = x1 + a\n").unwrap();
        let ring = m.diff_ring();
        let g = build_sigma_generators(&m);
        let expected: Vec<DiffPoly> = ["a*x1' - x1", "a*y1 - a*x1 - a^2"]
            .iter()
            .map(|s| parse_diffpoly(s, &ring).unwrap())
            .collect();
        assert_eq!(g.all(), expected);
        assert_eq!(g.saturator, v(0));
        assert_eq!(
            fmt_diffpoly(&g.out_eqs[0], &ring, &ring.default_ranking()),
            "-a*x1 + a*y1 - a^2"
        );
    }

    #[test]
    fn diffpoly_text_round_trips() {
        let m = parse_model(LINEAR).unwrap();
        let ring = m.diff_ring();
        let rk = ring.default_ranking();
        for src in ["y1' - (a + b)*y1", "y1*y1'' + a*y1'' - y1'^2 + b*y1'", "y1^(4) - 1/(a*b)*y1^2", "(a + b)/a*y1'''"] {
            let p = parse_diffpoly(src, &ring).unwrap();
            let text = fmt_diffpoly(&p, &ring, &rk);
            assert_eq!(parse_diffpoly(&text, &ring).unwrap(), p, "{text}");
        }
        assert_eq!(
            parse_diffpoly("y1^(2)", &ring).unwrap(),
            parse_diffpoly("y1''", &ring).unwrap()
        );
    }
}
