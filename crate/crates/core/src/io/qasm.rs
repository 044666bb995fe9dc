//! OpenQASM 2.0 subset: one quantum register, the fixed gate alphabet, and
//! `barrier`/`measure` statements (accepted, then dropped).

use std::fmt::Write as _;

use crate::circuit::{Gate, GateKind, QuantumCircuit};
use crate::error::QasmError;
use crate::io::float::format_g17;

/// Parse outcome together with the number of statements that were accepted
/// but carry no gate (barriers and measurements).
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedQasm {
    pub circuit: QuantumCircuit,
    pub dropped_statements: usize,
}

pub fn parse_qasm(text: &str) -> Result<QuantumCircuit, QasmError> {
    parse_qasm_with_report(text).map(|p| p.circuit)
}

pub fn parse_qasm_with_report(text: &str) -> Result<ParsedQasm, QasmError> {
    let tokens = tokenize(text)?;
    Parser { tokens, pos: 0, register: None, creg: Vec::new(), gates: Vec::new(), dropped: 0 }
        .run()
}

/// Deterministic OpenQASM 2.0 text for `circuit`, register `q`, one gate per line.
pub fn emit_qasm(circuit: &QuantumCircuit) -> String {
    let mut out = String::with_capacity(32 + circuit.len() * 16);
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for gate in circuit.gates() {
        out.push_str(gate.kind.name());
        if !gate.params.is_empty() {
            let params: Vec<String> = gate.params.iter().map(|&p| format_g17(p)).collect();
            let _ = write!(out, "({})", params.join(","));
        }
        let args: Vec<String> = gate.qubits.iter().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", args.join(","));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Int(usize),
    Str(String),
    Punct(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, QasmError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let push = |tokens: &mut Vec<Token>, tok| {
            tokens.push(Token { tok, line: start_line, column: start_col })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            push(&mut tokens, Tok::Ident(chars[start..i].iter().collect()));
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            let mut is_float = false;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                is_float = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    is_float = true;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lexeme: String = chars[start..i].iter().collect();
            col += i - start;
            let syntax = || QasmError::Syntax {
                line: start_line,
                column: start_col,
                message: format!("bad number `{lexeme}`"),
            };
            let tok = if is_float {
                Tok::Number(lexeme.parse().map_err(|_| syntax())?)
            } else {
                Tok::Int(lexeme.parse().map_err(|_| syntax())?)
            };
            push(&mut tokens, tok);
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(QasmError::Syntax {
                    line: start_line,
                    column: start_col,
                    message: "unterminated string".into(),
                });
            }
            let s: String = chars[start..i].iter().collect();
            i += 1;
            col += s.chars().count() + 2;
            push(&mut tokens, Tok::Str(s));
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            push(&mut tokens, Tok::Arrow);
            continue;
        }
        if "[](),;+-*/".contains(c) {
            i += 1;
            col += 1;
            push(&mut tokens, Tok::Punct(c));
            continue;
        }
        return Err(QasmError::Syntax {
            line: start_line,
            column: start_col,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    register: Option<(String, usize)>,
    creg: Vec<String>,
    gates: Vec<(Gate, usize, usize)>,
    dropped: usize,
}

impl Parser {
    fn run(mut self) -> Result<ParsedQasm, QasmError> {
        if self.peek_ident() == Some("OPENQASM") {
            self.pos += 1;
            match self.next_tok() {
                Some(Tok::Number(_)) | Some(Tok::Int(_)) => {}
                _ => return Err(self.syntax_prev("expected version number")),
            }
            self.expect_punct(';')?;
        }
        while self.pos < self.tokens.len() {
            self.statement()?;
        }
        let (_, size) = self.register.take().ok_or(QasmError::MissingRegister)?;
        let mut circuit = QuantumCircuit::new(size);
        for (gate, line, column) in self.gates {
            circuit.push(gate).map_err(|source| QasmError::Gate { line, column, source })?;
        }
        Ok(ParsedQasm { circuit, dropped_statements: self.dropped })
    }

    fn statement(&mut self) -> Result<(), QasmError> {
        let head = self.tokens[self.pos].clone();
        let name = match &head.tok {
            Tok::Ident(name) => name.clone(),
            _ => return Err(self.syntax_at(&head, "expected a statement")),
        };
        self.pos += 1;
        match name.as_str() {
            "include" => {
                match self.next_tok() {
                    Some(Tok::Str(_)) => {}
                    _ => return Err(self.syntax_prev("expected include path string")),
                }
                self.expect_punct(';')
            }
            "qreg" => {
                let (reg, size) = self.register_decl()?;
                if self.register.is_some() {
                    return Err(QasmError::MultipleRegisters { line: head.line, column: head.column });
                }
                self.register = Some((reg, size));
                Ok(())
            }
            "creg" => {
                let (reg, _) = self.register_decl()?;
                self.creg.push(reg);
                Ok(())
            }
            "barrier" => {
                self.qubit_args()?;
                self.expect_punct(';')?;
                self.dropped += 1;
                Ok(())
            }
            "measure" => {
                self.qubit_arg()?;
                if self.next_tok() != Some(Tok::Arrow) {
                    return Err(self.syntax_prev("expected `->`"));
                }
                let creg = self.ident()?;
                if !self.creg.contains(&creg) {
                    return Err(self.syntax_prev(&format!("undeclared classical register `{creg}`")));
                }
                if self.peek_punct('[') {
                    self.pos += 1;
                    self.int()?;
                    self.expect_punct(']')?;
                }
                self.expect_punct(';')?;
                self.dropped += 1;
                Ok(())
            }
            "gate" | "opaque" | "if" | "reset" | "U" | "CX" => Err(QasmError::UnsupportedGate {
                line: head.line,
                column: head.column,
                name,
            }),
            _ => {
                let kind: GateKind = name.parse().map_err(|_| QasmError::UnsupportedGate {
                    line: head.line,
                    column: head.column,
                    name: name.clone(),
                })?;
                let mut params = Vec::new();
                if self.peek_punct('(') {
                    self.pos += 1;
                    loop {
                        params.push(self.expr()?);
                        if self.peek_punct(',') {
                            self.pos += 1;
                            continue;
                        }
                        self.expect_punct(')')?;
                        break;
                    }
                }
                let args = self.qubit_args()?;
                self.expect_punct(';')?;
                let mut qubits = Vec::with_capacity(args.len());
                for (q, line, column) in args {
                    match q {
                        Some(q) => qubits.push(q),
                        None => {
                            return Err(QasmError::Syntax {
                                line,
                                column,
                                message: "gate arguments must index the register".into(),
                            })
                        }
                    }
                }
                self.gates.push((Gate { kind, qubits, params }, head.line, head.column));
                Ok(())
            }
        }
    }

    fn register_decl(&mut self) -> Result<(String, usize), QasmError> {
        let reg = self.ident()?;
        self.expect_punct('[')?;
        let size = self.int()?;
        self.expect_punct(']')?;
        self.expect_punct(';')?;
        Ok((reg, size))
    }

    fn qubit_args(&mut self) -> Result<Vec<(Option<usize>, usize, usize)>, QasmError> {
        let mut args = vec![self.qubit_arg()?];
        while self.peek_punct(',') {
            self.pos += 1;
            args.push(self.qubit_arg()?);
        }
        Ok(args)
    }

    /// `q[i]` yields `Some(i)`; a bare register name yields `None`.
    fn qubit_arg(&mut self) -> Result<(Option<usize>, usize, usize), QasmError> {
        let tok = self.tokens.get(self.pos).cloned().ok_or_else(|| self.eof())?;
        let name = self.ident()?;
        let (reg, size) = match &self.register {
            Some((reg, size)) => (reg.clone(), *size),
            None => return Err(self.syntax_at(&tok, "quantum register used before declaration")),
        };
        if name != reg {
            return Err(self.syntax_at(&tok, &format!("unknown quantum register `{name}`")));
        }
        if !self.peek_punct('[') {
            return Ok((None, tok.line, tok.column));
        }
        self.pos += 1;
        let idx_tok = self.tokens.get(self.pos).cloned().ok_or_else(|| self.eof())?;
        let index = self.int()?;
        self.expect_punct(']')?;
        if index >= size {
            return Err(QasmError::IndexOutOfBounds {
                line: idx_tok.line,
                column: idx_tok.column,
                index,
                size,
            });
        }
        Ok((Some(index), tok.line, tok.column))
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<f64, QasmError> {
        let mut value = self.term()?;
        loop {
            if self.peek_punct('+') {
                self.pos += 1;
                value += self.term()?;
            } else if self.peek_punct('-') {
                self.pos += 1;
                value -= self.term()?;
            } else {
                return Ok(value);
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<f64, QasmError> {
        let mut value = self.unary()?;
        loop {
            if self.peek_punct('*') {
                self.pos += 1;
                value *= self.unary()?;
            } else if self.peek_punct('/') {
                self.pos += 1;
                value /= self.unary()?;
            } else {
                return Ok(value);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, QasmError> {
        if self.peek_punct('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek_punct('+') {
            self.pos += 1;
            return self.unary();
        }
        match self.next_tok() {
            Some(Tok::Number(x)) => Ok(x),
            Some(Tok::Int(i)) => Ok(i as f64),
            Some(Tok::Ident(ref id)) if id == "pi" => Ok(std::f64::consts::PI),
            Some(Tok::Punct('(')) => {
                let v = self.expr()?;
                self.expect_punct(')')?;
                Ok(v)
            }
            Some(_) => Err(self.syntax_prev("expected a numeric angle")),
            None => Err(self.eof()),
        }
    }

    fn ident(&mut self) -> Result<String, QasmError> {
        match self.next_tok() {
            Some(Tok::Ident(s)) => Ok(s),
            Some(_) => Err(self.syntax_prev("expected identifier")),
            None => Err(self.eof()),
        }
    }

    fn int(&mut self) -> Result<usize, QasmError> {
        match self.next_tok() {
            Some(Tok::Int(i)) => Ok(i),
            Some(_) => Err(self.syntax_prev("expected integer")),
            None => Err(self.eof()),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), QasmError> {
        match self.next_tok() {
            Some(Tok::Punct(p)) if p == c => Ok(()),
            Some(_) => Err(self.syntax_prev(&format!("expected `{c}`"))),
            None => Err(self.eof()),
        }
    }

    fn peek_punct(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token { tok: Tok::Punct(p), .. }) if *p == c)
    }

    fn peek_ident(&self) -> Option<&str> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Ident(s), .. }) => Some(s),
            _ => None,
        }
    }

    fn next_tok(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn syntax_at(&self, tok: &Token, message: &str) -> QasmError {
        QasmError::Syntax { line: tok.line, column: tok.column, message: message.to_string() }
    }

    fn syntax_prev(&self, message: &str) -> QasmError {
        let tok = &self.tokens[self.pos.saturating_sub(1).min(self.tokens.len() - 1)];
        self.syntax_at(tok, message)
    }

    fn eof(&self) -> QasmError {
        let (line, column) = self.tokens.last().map(|t| (t.line, t.column)).unwrap_or((1, 1));
        QasmError::Syntax { line, column, message: "unexpected end of input".into() }
    }
}
