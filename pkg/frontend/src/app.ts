// DOM wiring: one active session per tab, one request in flight, and the
// board re-rendered wholesale from each payload.

import { GameClient, IllegalMove, SessionGone } from './api.js';
import { renderStateHTML } from './board.js';
import { traceSteps, type WatchStep } from './watch.js';
import { PayloadError, type StateView } from './types.js';

const client = new GameClient('');

let current: StateView | null = null;
let inFlight = false;
let watch: { steps: WatchStep[]; at: number } | null = null;

const boardHost = document.getElementById('board') as HTMLDivElement;
const messageHost = document.getElementById('message') as HTMLDivElement;
const kSelect = document.getElementById('k-select') as HTMLSelectElement;
const newGameButton = document.getElementById('new-game') as HTMLButtonElement;
const watchInput = document.getElementById('watch-file') as HTMLInputElement;
const watchPrev = document.getElementById('watch-prev') as HTMLButtonElement;
const watchNext = document.getElementById('watch-next') as HTMLButtonElement;
const watchLabel = document.getElementById('watch-label') as HTMLSpanElement;

function showMessage(text: string, kind: 'info' | 'error' = 'info'): void {
  messageHost.textContent = text;
  messageHost.className = text ? `message message-${kind}` : 'message';
}

function renderView(view: StateView): void {
  try {
    boardHost.innerHTML = renderStateHTML(view);
  } catch (error) {
    boardHost.innerHTML = '';
    showMessage(`malformed payload: ${(error as Error).message}`, 'error');
    return;
  }
  if (view.status === 'open' && view.pending && !watch) {
    for (const gapNode of boardHost.querySelectorAll<SVGGElement>('.gap')) {
      gapNode.addEventListener('click', () => {
        const gap = Number(gapNode.dataset.gap);
        void submitMove(gap);
      });
    }
  }
}

async function submitMove(gap: number): Promise<void> {
  if (!current || inFlight || current.status !== 'open') return;
  inFlight = true;
  boardHost.classList.add('locked');
  try {
    const view = await client.submitMove(current.id, gap);
    current = view;
    showMessage('');
    renderView(view);
  } catch (error) {
    if (error instanceof IllegalMove) {
      showMessage(`illegal move: ${error.message}`, 'error');
    } else if (error instanceof SessionGone) {
      showMessage(`session ended (${error.status}): ${error.message}`, 'error');
    } else if (error instanceof PayloadError) {
      boardHost.innerHTML = '';
      showMessage(`malformed payload: ${error.message}`, 'error');
    } else {
      showMessage(`request failed: ${(error as Error).message}`, 'error');
    }
  } finally {
    inFlight = false;
    boardHost.classList.remove('locked');
  }
}

async function newGame(): Promise<void> {
  if (inFlight) return;
  inFlight = true;
  watch = null;
  watchLabel.textContent = '';
  try {
    if (current) void client.deleteSession(current.id);
    const view = await client.createSession(Number(kSelect.value), 'human');
    current = view;
    showMessage('you are Bob: click a gap to insert the pending vertex');
    renderView(view);
  } catch (error) {
    showMessage(`could not start a session: ${(error as Error).message}`, 'error');
  } finally {
    inFlight = false;
  }
}

function renderWatch(): void {
  if (!watch) return;
  const step = watch.steps[watch.at];
  if (!step) return;
  watchLabel.textContent = `step ${watch.at}/${watch.steps.length - 1}: ${step.label}`;
  renderView(step.view);
}

newGameButton.addEventListener('click', () => void newGame());

watchInput.addEventListener('change', () => {
  const file = watchInput.files?.[0];
  if (!file) return;
  void file.text().then((text) => {
    try {
      const trace = JSON.parse(text);
      watch = { steps: traceSteps(trace), at: 0 };
      current = null;
      showMessage('watch mode: stepping through a recorded trace');
      renderWatch();
    } catch (error) {
      showMessage(`could not read trace: ${(error as Error).message}`, 'error');
    }
  });
});

watchPrev.addEventListener('click', () => {
  if (watch && watch.at > 0) {
    watch.at -= 1;
    renderWatch();
  }
});

watchNext.addEventListener('click', () => {
  if (watch && watch.at < watch.steps.length - 1) {
    watch.at += 1;
    renderWatch();
  }
});

void newGame();
