use std::alloc::{GlobalAlloc, Layout, System};
use std::io;
use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};

use sparse_monge::cli::{self, AllocProbe};

struct Counting;

static CURRENT: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);
static BASE: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            let now = CURRENT.fetch_add(layout.size(), Relaxed) + layout.size();
            PEAK.fetch_max(now, Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        CURRENT.fetch_sub(layout.size(), Relaxed);
    }
}

#[global_allocator]
static ALLOC: Counting = Counting;

struct Probe;

impl AllocProbe for Probe {
    fn reset(&self) {
        let now = CURRENT.load(Relaxed);
        BASE.store(now, Relaxed);
        PEAK.store(now, Relaxed);
    }

    fn peak(&self) -> usize {
        PEAK.load(Relaxed).saturating_sub(BASE.load(Relaxed))
    }
}

fn main() {
    let stdin = io::stdin();
    let code = cli::run(
        std::env::args_os(),
        cli::Io {
            stdin: &mut stdin.lock(),
            stdout: &mut io::stdout().lock(),
            stderr: &mut io::stderr().lock(),
        },
        Some(&Probe),
    );
    std::process::exit(code);
}
